"""
Stationary kernels k = sigma^2 g(r^2), where r^2 is the squared distance after
dividing each input dimension by its length scale.

Isotropic variants take one log length scale, ARD variants one per dimension.
Parameters are ordered (log l..., log sigma, extras...).
"""
import numpy as np

from gpkit.errors import ConfigurationError
from gpkit.kernels.base import Kernel, fmt, fmt_vector, sqdist


class StationaryKernel(Kernel):
    """Shared parameter handling and gradients for distance-based kernels."""

    family = ""

    def __init__(self, ll, lsigma):
        ll = np.asarray(ll, dtype=float)
        if ll.ndim > 1 or (ll.ndim == 1 and ll.size == 0):
            raise ConfigurationError(f"{self.family}: length scales must be a scalar or a non-empty vector")
        self.ard = ll.ndim == 1
        self.ll = np.atleast_1d(ll).copy()
        self.lsigma = float(lsigma)

    @property
    def dim(self):
        return self.ll.size if self.ard else None

    @property
    def sigma2(self):
        return np.exp(2.0 * self.lsigma)

    # extra (non length-scale, non amplitude) parameters
    def _extra_params(self):
        return np.zeros(0)

    def _set_extra(self, values):
        pass

    def _extra_names(self):
        return []

    def num_params(self):
        return self.ll.size + 1 + self._extra_params().size

    def get_params(self):
        return np.concatenate([self.ll, [self.lsigma], self._extra_params()])

    def set_params(self, params):
        params = self._check_length(params)
        n = self.ll.size
        self.ll = params[:n].copy()
        self.lsigma = float(params[n])
        self._set_extra(params[n + 1:])

    def param_names(self):
        lls = [f"ll_{i + 1}" for i in range(self.ll.size)] if self.ard else ["ll"]
        return lls + ["lsigma"] + self._extra_names()

    def _scaled(self, X):
        return X / np.exp(self.ll)[:, None]

    def _r2(self, X1, X2, same):
        S1 = self._scaled(X1)
        D = sqdist(S1, S1 if same else self._scaled(X2))
        if same:
            np.fill_diagonal(D, 0.0)
        return D

    # unit-amplitude profile g(r^2) and q(r^2) = -2 dg/d(r^2)
    def _shape(self, r2):
        raise NotImplementedError

    def _q_times(self, r2, s):
        """q(r^2) * s, taking the r -> 0 limit as 0 where needed."""
        raise NotImplementedError

    def _extra_grads(self, r2, K):
        return []

    def _cov(self, X1, X2, same):
        return self.sigma2 * self._shape(self._r2(X1, X2, same))

    def _grad_stack(self, X1, X2, same):
        r2 = self._r2(X1, X2, same)
        K = self.sigma2 * self._shape(r2)
        grads = []
        if self.ard:
            S1 = self._scaled(X1)
            S2 = S1 if same else self._scaled(X2)
            for i in range(self.ll.size):
                s = (S1[i][:, None] - S2[i][None, :]) ** 2
                grads.append(self.sigma2 * self._q_times(r2, s))
        else:
            grads.append(self.sigma2 * self._q_times(r2, r2))
        grads.append(2.0 * K)
        grads.extend(self._extra_grads(r2, K))
        return np.stack(grads)

    def _diag(self, X):
        return np.full(X.shape[1], self.sigma2)

    def _grad_diag(self, X):
        out = np.zeros((self.num_params(), X.shape[1]))
        out[self.ll.size] = 2.0 * self.sigma2
        return out

    def _ll_expr(self):
        return fmt_vector(self.ll) if self.ard else fmt(self.ll[0])


class SEIso(StationaryKernel):
    """Squared exponential, sigma^2 exp(-r^2 / 2)."""

    family = "SE"
    label = "SE"

    def _shape(self, r2):
        return np.exp(-0.5 * r2)

    def _q_times(self, r2, s):
        return np.exp(-0.5 * r2) * s

    def to_expr(self):
        return f"SE({self._ll_expr()}, {fmt(self.lsigma)})"


class SEArd(SEIso):
    pass


class Mat12Iso(StationaryKernel):
    """Matern 1/2, sigma^2 exp(-r)."""

    family = "Matern"
    label = "Matern12"
    order = "1/2"

    def _shape(self, r2):
        return np.exp(-np.sqrt(r2))

    def _q_times(self, r2, s):
        # q = exp(-r) / r; the kernel is not differentiable at r = 0 and the
        # gradient there is taken as 0.
        r = np.sqrt(r2)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(r > 0.0, np.exp(-r) * s / np.where(r > 0.0, r, 1.0), 0.0)
        return out

    def to_expr(self):
        return f"Matern({self.order}, {self._ll_expr()}, {fmt(self.lsigma)})"


class Mat12Ard(Mat12Iso):
    pass


class Mat32Iso(Mat12Iso):
    """Matern 3/2, sigma^2 (1 + sqrt(3) r) exp(-sqrt(3) r)."""

    label = "Matern32"
    order = "3/2"

    def _shape(self, r2):
        r = np.sqrt(3.0 * r2)
        return (1.0 + r) * np.exp(-r)

    def _q_times(self, r2, s):
        return 3.0 * np.exp(-np.sqrt(3.0 * r2)) * s


class Mat32Ard(Mat32Iso):
    pass


class Mat52Iso(Mat12Iso):
    """Matern 5/2, sigma^2 (1 + sqrt(5) r + 5 r^2 / 3) exp(-sqrt(5) r)."""

    label = "Matern52"
    order = "5/2"

    def _shape(self, r2):
        r = np.sqrt(5.0 * r2)
        return (1.0 + r + r * r / 3.0) * np.exp(-r)

    def _q_times(self, r2, s):
        r = np.sqrt(5.0 * r2)
        return (5.0 / 3.0) * (1.0 + r) * np.exp(-r) * s


class Mat52Ard(Mat52Iso):
    pass


class RQIso(StationaryKernel):
    """Rational quadratic, sigma^2 (1 + r^2 / (2 alpha))^(-alpha)."""

    family = "RQ"
    label = "RQ"

    def __init__(self, ll, lsigma, lalpha):
        super().__init__(ll, lsigma)
        self.lalpha = float(lalpha)

    def _extra_params(self):
        return np.array([self.lalpha])

    def _set_extra(self, values):
        self.lalpha = float(values[0])

    def _extra_names(self):
        return ["lalpha"]

    def _shape(self, r2):
        alpha = np.exp(self.lalpha)
        return (1.0 + r2 / (2.0 * alpha)) ** (-alpha)

    def _q_times(self, r2, s):
        alpha = np.exp(self.lalpha)
        return (1.0 + r2 / (2.0 * alpha)) ** (-alpha - 1.0) * s

    def _extra_grads(self, r2, K):
        alpha = np.exp(self.lalpha)
        u = 1.0 + r2 / (2.0 * alpha)
        return [K * (-alpha * np.log(u) + r2 / (2.0 * u))]

    def to_expr(self):
        return f"RQ({self._ll_expr()}, {fmt(self.lsigma)}, {fmt(self.lalpha)})"


class RQArd(RQIso):
    pass


class Periodic(Kernel):
    """Periodic, sigma^2 exp(-2 sin^2(pi |x - x'| / p) / l^2); parameters (log l, log sigma, log p)."""

    label = "Periodic"

    def __init__(self, ll, lsigma, lp):
        self.ll = float(ll)
        self.lsigma = float(lsigma)
        self.lp = float(lp)

    def num_params(self):
        return 3

    def get_params(self):
        return np.array([self.ll, self.lsigma, self.lp])

    def set_params(self, params):
        self.ll, self.lsigma, self.lp = (float(v) for v in self._check_length(params))

    def param_names(self):
        return ["ll", "lsigma", "lp"]

    def _parts(self, X1, X2, same):
        r2 = sqdist(X1, X1 if same else X2)
        if same:
            np.fill_diagonal(r2, 0.0)
        r = np.sqrt(r2)
        p = np.exp(self.lp)
        l2 = np.exp(2.0 * self.ll)
        sin = np.sin(np.pi * r / p)
        K = np.exp(2.0 * self.lsigma) * np.exp(-2.0 * sin * sin / l2)
        return r, p, l2, sin, K

    def _cov(self, X1, X2, same):
        return self._parts(X1, X2, same)[-1]

    def _grad_stack(self, X1, X2, same):
        r, p, l2, sin, K = self._parts(X1, X2, same)
        d_ll = K * 4.0 * sin * sin / l2
        d_lp = K * 2.0 * np.pi * r * np.sin(2.0 * np.pi * r / p) / (p * l2)
        return np.stack([d_ll, 2.0 * K, d_lp])

    def _diag(self, X):
        return np.full(X.shape[1], np.exp(2.0 * self.lsigma))

    def _grad_diag(self, X):
        out = np.zeros((3, X.shape[1]))
        out[1] = 2.0 * np.exp(2.0 * self.lsigma)
        return out

    def to_expr(self):
        return f"Periodic({fmt(self.ll)}, {fmt(self.lsigma)}, {fmt(self.lp)})"
