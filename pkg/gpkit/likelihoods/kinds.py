"""
Concrete observation models.

    BernLik   y in {0, 1},     p(y=1 | f) = Phi(f)
    BinLik    y in {0..n},     logit link, n trials
    ExpLik    y > 0,           rate exp(-f)
    GaussLik  y real,          N(f, sigma^2)
    PoisLik   y in {0, 1, ..}, rate exp(f)
    StuTLik   y real,          Student-t with nu degrees of freedom, scale sigma
"""
import numpy as np
from scipy.special import expit, gammaln, log_ndtr

from gpkit.errors import ConfigurationError
from gpkit.kernels.base import fmt
from gpkit.likelihoods.base import Likelihood

_LOG_SQRT_2PI = 0.5 * np.log(2.0 * np.pi)


class BernLik(Likelihood):
    """Bernoulli with probit link."""

    label = "BernLik"
    integer_response = True

    def _check_response(self, y):
        return (y == 0) | (y == 1)

    def _logpdf(self, y, f):
        return log_ndtr((2.0 * y - 1.0) * f)

    def _dlogpdf_df(self, y, f):
        s = 2.0 * y - 1.0
        # phi(f) / Phi(s f) in log space so it stays finite in the tails
        return s * np.exp(-0.5 * f * f - _LOG_SQRT_2PI - log_ndtr(s * f))

    def conditional_mean(self, f):
        return np.exp(log_ndtr(f))

    def conditional_var(self, f):
        p = np.exp(log_ndtr(f))
        return p * (1.0 - p)

    def to_expr(self):
        return "BernLik()"


class BinLik(Likelihood):
    """Binomial with n trials and logit link."""

    label = "BinLik"
    integer_response = True

    def __init__(self, n):
        if int(n) != n or n < 1:
            raise ConfigurationError(f"BinLik: number of trials must be a positive integer, got {n}")
        self.n = int(n)

    def _check_response(self, y):
        return (y >= 0) & (y <= self.n)

    def _logpdf(self, y, f):
        log_choose = gammaln(self.n + 1.0) - gammaln(y + 1.0) - gammaln(self.n - y + 1.0)
        return log_choose + y * f - self.n * np.logaddexp(0.0, f)

    def _dlogpdf_df(self, y, f):
        return y - self.n * expit(f)

    def conditional_mean(self, f):
        return self.n * expit(f)

    def conditional_var(self, f):
        p = expit(f)
        return self.n * p * (1.0 - p)

    def to_expr(self):
        return f"BinLik({self.n})"


class ExpLik(Likelihood):
    """Exponential with rate exp(-f), so E[y | f] = exp(f)."""

    label = "ExpLik"

    def _check_response(self, y):
        return y > 0

    def _logpdf(self, y, f):
        return -f - y * np.exp(-f)

    def _dlogpdf_df(self, y, f):
        return y * np.exp(-f) - 1.0

    def conditional_mean(self, f):
        return np.exp(f)

    def conditional_var(self, f):
        return np.exp(2.0 * f)

    def to_expr(self):
        return "ExpLik()"


class GaussLik(Likelihood):
    """Gaussian noise with log standard deviation lsigma."""

    label = "GaussLik"

    def __init__(self, lsigma):
        self.lsigma = float(lsigma)

    @property
    def variance(self):
        return np.exp(2.0 * self.lsigma)

    def num_params(self):
        return 1

    def get_params(self):
        return np.array([self.lsigma])

    def set_params(self, params):
        self.lsigma = float(self._check_length(params)[0])

    def param_names(self):
        return ["lsigma"]

    def _logpdf(self, y, f):
        r = y - f
        return -0.5 * r * r / self.variance - self.lsigma - _LOG_SQRT_2PI

    def _dlogpdf_df(self, y, f):
        return (y - f) / self.variance

    def _dlogpdf_dtheta(self, y, f):
        r = y - f
        return (r * r / self.variance - 1.0)[None]

    def conditional_mean(self, f):
        return np.asarray(f, dtype=float)

    def conditional_var(self, f):
        return np.full(np.shape(f), self.variance)

    def predictive_moments(self, mu, var, quad_order=None):
        if var < 0:
            raise ConfigurationError(f"latent variance must be non-negative, got {var}")
        return float(mu), float(var) + self.variance

    def to_expr(self):
        return f"GaussLik({fmt(self.lsigma)})"


class PoisLik(Likelihood):
    """Poisson with rate exp(f)."""

    label = "PoisLik"
    integer_response = True

    def _check_response(self, y):
        return y >= 0

    def _logpdf(self, y, f):
        return y * f - np.exp(f) - gammaln(y + 1.0)

    def _dlogpdf_df(self, y, f):
        return y - np.exp(f)

    def conditional_mean(self, f):
        return np.exp(f)

    def conditional_var(self, f):
        return np.exp(f)

    def to_expr(self):
        return "PoisLik()"


class StuTLik(Likelihood):
    """
    Student-t with fixed degrees of freedom nu and log scale lsigma.

    The response variance is infinite for nu <= 2 and the mean undefined
    for nu <= 1; predictive_moments then returns inf / nan accordingly.
    """

    label = "StuTLik"

    def __init__(self, nu, lsigma):
        if not nu > 0:
            raise ConfigurationError(f"StuTLik: degrees of freedom must be positive, got {nu}")
        self.nu = float(nu)
        self.lsigma = float(lsigma)

    def num_params(self):
        return 1

    def get_params(self):
        return np.array([self.lsigma])

    def set_params(self, params):
        self.lsigma = float(self._check_length(params)[0])

    def param_names(self):
        return ["lsigma"]

    def _z2(self, y, f):
        z = (y - f) / np.exp(self.lsigma)
        return z * z

    def _logpdf(self, y, f):
        nu = self.nu
        norm = gammaln(0.5 * (nu + 1.0)) - gammaln(0.5 * nu) - 0.5 * np.log(nu * np.pi) - self.lsigma
        return norm - 0.5 * (nu + 1.0) * np.log1p(self._z2(y, f) / nu)

    def _dlogpdf_df(self, y, f):
        r = y - f
        return (self.nu + 1.0) * r / (self.nu * np.exp(2.0 * self.lsigma) + r * r)

    def _dlogpdf_dtheta(self, y, f):
        z2 = self._z2(y, f)
        return ((self.nu + 1.0) * z2 / (self.nu + z2) - 1.0)[None]

    def conditional_mean(self, f):
        f = np.asarray(f, dtype=float)
        return f if self.nu > 1 else np.full(f.shape, np.nan)

    def conditional_var(self, f):
        var = np.exp(2.0 * self.lsigma) * self.nu / (self.nu - 2.0) if self.nu > 2 else np.inf
        return np.full(np.shape(f), var)

    def to_expr(self):
        return f"StuTLik({fmt(self.nu)}, {fmt(self.lsigma)})"
