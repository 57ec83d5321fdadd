"""Dot-product kernels: linear (isotropic and ARD) and polynomial."""
import numpy as np

from gpkit.errors import ConfigurationError
from gpkit.kernels.base import Kernel, fmt, fmt_vector


class LinIso(Kernel):
    """Linear kernel x'x* / l^2 with a single log length scale."""

    label = "Lin"

    def __init__(self, ll):
        self.ll = float(ll)

    def num_params(self):
        return 1

    def get_params(self):
        return np.array([self.ll])

    def set_params(self, params):
        self.ll = float(self._check_length(params)[0])

    def param_names(self):
        return ["ll"]

    def _cov(self, X1, X2, same):
        return (X1.T @ X2) / np.exp(2.0 * self.ll)

    def _grad_stack(self, X1, X2, same):
        return (-2.0 * self._cov(X1, X2, same))[None]

    def _diag(self, X):
        return np.einsum("ij,ij->j", X, X) / np.exp(2.0 * self.ll)

    def _grad_diag(self, X):
        return (-2.0 * self._diag(X))[None]

    def to_expr(self):
        return f"Lin({fmt(self.ll)})"


class LinArd(Kernel):
    """
    Linear kernel x' L^-2 x* with one log length scale per dimension.

    There is no amplitude parameter; compose with Const for one.
    """

    label = "Lin"

    def __init__(self, ll):
        ll = np.atleast_1d(np.asarray(ll, dtype=float))
        if ll.ndim != 1 or ll.size == 0:
            raise ConfigurationError("Lin: length scales must be a non-empty vector")
        self.ll = ll.copy()

    @property
    def dim(self):
        return self.ll.size

    def num_params(self):
        return self.ll.size

    def get_params(self):
        return self.ll.copy()

    def set_params(self, params):
        self.ll = self._check_length(params).copy()

    def param_names(self):
        return [f"ll_{i + 1}" for i in range(self.ll.size)]

    def _weights(self):
        return np.exp(-2.0 * self.ll)

    def _cov(self, X1, X2, same):
        return (X1 * self._weights()[:, None]).T @ X2

    def _grad_stack(self, X1, X2, same):
        w = self._weights()
        return -2.0 * w[:, None, None] * X1[:, :, None] * X2[:, None, :]

    def _diag(self, X):
        return self._weights() @ (X * X)

    def _grad_diag(self, X):
        return -2.0 * self._weights()[:, None] * X * X

    def to_expr(self):
        return f"Lin({fmt_vector(self.ll)})"


class Poly(Kernel):
    """
    Polynomial kernel sigma^2 (x'x* + c)^degree.

    Parameters are (log c, log sigma); the degree is fixed at construction.
    """

    label = "Poly"

    def __init__(self, lc, lsigma, degree):
        if int(degree) != degree or degree < 1:
            raise ConfigurationError(f"Poly: degree must be a positive integer, got {degree}")
        self.lc = float(lc)
        self.lsigma = float(lsigma)
        self.degree = int(degree)

    def num_params(self):
        return 2

    def get_params(self):
        return np.array([self.lc, self.lsigma])

    def set_params(self, params):
        self.lc, self.lsigma = (float(v) for v in self._check_length(params))

    def param_names(self):
        return ["lc", "lsigma"]

    def _base(self, dots):
        return dots + np.exp(self.lc)

    def _cov(self, X1, X2, same):
        return np.exp(2.0 * self.lsigma) * self._base(X1.T @ X2) ** self.degree

    def _grad_stack(self, X1, X2, same):
        base = self._base(X1.T @ X2)
        sigma2 = np.exp(2.0 * self.lsigma)
        d_lc = sigma2 * self.degree * base ** (self.degree - 1) * np.exp(self.lc)
        return np.stack([d_lc, 2.0 * sigma2 * base ** self.degree])

    def _diag(self, X):
        return np.exp(2.0 * self.lsigma) * self._base(np.einsum("ij,ij->j", X, X)) ** self.degree

    def _grad_diag(self, X):
        base = self._base(np.einsum("ij,ij->j", X, X))
        sigma2 = np.exp(2.0 * self.lsigma)
        d_lc = sigma2 * self.degree * base ** (self.degree - 1) * np.exp(self.lc)
        return np.stack([d_lc, 2.0 * sigma2 * base ** self.degree])

    def to_expr(self):
        return f"Poly({fmt(self.lc)}, {fmt(self.lsigma)}, {self.degree})"
