"""
Monte Carlo GP for non-Gaussian likelihoods.

The latent function at the training inputs is whitened, f = m(X) + L v with
L the Cholesky factor of K and v ~ N(0, I), and (v, theta) are sampled jointly.
"""
import numpy as np
import scipy.linalg as sla
from loguru import logger

from gpkit import settings
from gpkit.errors import ConfigurationError
from gpkit.likelihoods.base import Likelihood
from gpkit.models.base import GPBase
from gpkit.models.exact import _draw
from gpkit.utils.linalg import cholesky_derivative
from gpkit.utils.params import Parameterized

_LOG_2PI = np.log(2.0 * np.pi)


class LatentVector(Parameterized):
    """Whitened latent variables v; their N(0, I) prior is part of the model, not a PriorSet."""

    label = "v"

    def __init__(self, n):
        self.values = np.zeros(n)

    def num_params(self):
        return self.values.size

    def get_params(self):
        return self.values.copy()

    def set_params(self, params):
        self.values = self._check_length(params).copy()

    def param_names(self):
        return [f"v_{i + 1}" for i in range(self.values.size)]

    def param_labels(self):
        return [f"v{i + 1}" for i in range(self.values.size)]


class GPMC(GPBase):
    """
    Latent-variable GP with an arbitrary likelihood.

    Attributes:
        lik: Observation model.
        v: Whitened latent variables (initialized at 0, the prior mode).
        L: Lower Cholesky factor of K + jitter I.
        f: Latent function values m(X) + L v.
        target: Cached log posterior.
    """

    kind = "GPMC"

    def __init__(self, X, y, mean, kernel, lik):
        super().__init__(X, y, mean, kernel)
        if not isinstance(lik, Likelihood):
            raise ConfigurationError(f"not a likelihood: {lik!r}")
        self.lik = lik
        self._y = lik.validate(self._y)
        self.v = LatentVector(self.nobs)
        self._refresh()

    def param_groups(self):
        return [("v", self.v), ("lik", self.lik), ("mean", self.mean), ("kernel", self.kernel)]

    def _refresh(self):
        n = self.nobs
        gram = self.kernel.gram(self.X)
        self.L = gram.cholesky(start=settings.MC_JITTER_START, always=True)
        self.jitter = gram.jitter_applied
        K = gram.values
        scale = np.trace(K) / n if n else 0.0
        # the jitter is proportional to the mean diagonal, so it moves with theta
        self._jitter_rel = self.jitter / scale if np.isfinite(scale) and scale > 0 else 0.0
        self.f = self.mean.evaluate(self.X) + self.L @ self.v.values
        self.loglik = float(np.sum(self.lik.log_density(self.y, self.f)))
        v = self.v.values
        self._latent_prior = float(-0.5 * v @ v - 0.5 * n * _LOG_2PI)
        self.target = self.loglik + self._latent_prior + self.log_prior()

    def update_target(self):
        """Recompute L, f and the cached target from the current parameters."""
        self._refresh()
        return self.target

    def log_likelihood(self):
        """log p(y | f) + log N(v; 0, I)."""
        return self.loglik + self._latent_prior

    def log_posterior(self):
        return self.target

    def _grad_log_likelihood_full(self):
        n = self.nobs
        v = self.v.values
        dlf = np.asarray(self.lik.dlog_density_df(self.y, self.f), dtype=float)
        grad_v = self.L.T @ dlf - v
        grad_lik = self.lik.dlog_density_dtheta(self.y, self.f).sum(axis=1)
        grad_mean = self.mean.grad_params(self.X) @ dlf
        grad_kern = np.empty(self.kernel.num_params())
        for j, dK in enumerate(self.kernel.grad_stack(self.X)):
            if self._jitter_rel:
                dK = dK + (self._jitter_rel * np.trace(dK) / n) * np.eye(n)
            dL = cholesky_derivative(self.L, dK)
            grad_kern[j] = dlf @ (dL @ v)
        return np.concatenate([grad_v, grad_lik, grad_mean, grad_kern])

    def grad_log_posterior(self, **flags):
        return self.grad_log_target(**flags)

    def _latent_conditional(self, Xstar, full_cov):
        Xstar = self._prepare_test_inputs(Xstar)
        Kfs = self.kernel.cov(self.X, Xstar)
        # K^-1 (f - m) = L^-T v
        w = sla.solve_triangular(self.L, self.v.values, lower=True, trans="T", check_finite=False)
        mu = self.mean.evaluate(Xstar) + Kfs.T @ w
        V = sla.solve_triangular(self.L, Kfs, lower=True, check_finite=False)
        if full_cov:
            S = self.kernel.cov(Xstar) - V.T @ V
            S = 0.5 * (S + S.T)
            d = np.diag_indices_from(S)
            S[d] = np.maximum(S[d], 0.0)
            return mu, S
        return mu, np.maximum(self.kernel.diag(Xstar) - np.einsum("ij,ij->j", V, V), 0.0)

    def predict_f(self, Xstar, full_cov=False):
        """Latent mean and variance at Xstar given the current latent state."""
        return self._latent_conditional(Xstar, full_cov)

    def predict_y(self, Xstar, quad_order=None):
        """Response mean and variance at Xstar given the current state, by quadrature."""
        mu, var = self._latent_conditional(Xstar, False)
        moments = np.array([self.lik.predictive_moments(m, s, quad_order) for m, s in zip(mu, var)])
        return moments[:, 0], moments[:, 1]

    def sample_posterior(self, Xstar, count=1, seed=0):
        """(count, m) draws of the latent function at Xstar given the current state."""
        mu, S = self._latent_conditional(Xstar, True)
        return _draw(mu, S, count, seed)

    def summary(self):
        lines = ["GP Monte Carlo object:", f"  Dim = {self.dim}", f"  Number of observations = {self.nobs}"]
        lines += self._type_lines()
        lines.append("  Likelihood:")
        for row, params in self.lik.types():
            lines.append(f"    Type: {row}, Params: [" + ",".join(f"{p:.4g}" for p in params) + "]")
        lines.append(f"  Log-posterior = {self.target:.6g}")
        return "\n".join(lines)

    def __str__(self):
        return self.summary()


def mc_predict_y(gp, samples, Xstar, quad_order=None, return_var=False):
    """
    Response predictions averaged over posterior samples.

    For each sample the latent GP is conditioned on f = m(X) + L v, giving a
    Gaussian at each test point, and the likelihood's predictive moments are
    taken by Gauss-Hermite quadrature. Averaging the rows gives the Monte
    Carlo estimate of E[y*].

    Parameters:
        gp: GPMC the samples were drawn from.
        samples: (num_params, S) matrix as returned by mcmc.
        Xstar: (d, m) test inputs.
        quad_order: Gauss-Hermite order (default from settings).
        return_var: Also return the per-sample predictive variances.

    Returns:
        (S, m) predictive means, and the (S, m) variances if return_var.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim == 1:
        samples = samples[:, None]
    original = gp.get_params()
    means, variances = [], []
    try:
        for sample in samples.T:
            gp.set_params(sample)
            mu, var = gp.predict_y(Xstar, quad_order)
            means.append(mu)
            variances.append(var)
    finally:
        gp.set_params(original)
    logger.debug("predicted {} test points over {} samples", np.shape(means)[-1], samples.shape[1])
    if return_var:
        return np.array(means), np.array(variances)
    return np.array(means)
