"""Constant and white-noise kernels, both parameterized by log sigma."""
import numpy as np

from gpkit.kernels.base import Kernel, fmt


class _Amplitude(Kernel):

    def __init__(self, lsigma):
        self.lsigma = float(lsigma)

    @property
    def sigma2(self):
        return np.exp(2.0 * self.lsigma)

    def num_params(self):
        return 1

    def get_params(self):
        return np.array([self.lsigma])

    def set_params(self, params):
        self.lsigma = float(self._check_length(params)[0])

    def param_names(self):
        return ["lsigma"]

    def _diag(self, X):
        return np.full(X.shape[1], self.sigma2)

    def _grad_diag(self, X):
        return np.full((1, X.shape[1]), 2.0 * self.sigma2)

    def _grad_stack(self, X1, X2, same):
        return (2.0 * self._cov(X1, X2, same))[None]


class Const(_Amplitude):
    """k(x, x') = sigma^2 everywhere."""

    label = "Const"

    def _cov(self, X1, X2, same):
        return np.full((X1.shape[1], X2.shape[1]), self.sigma2)

    def to_expr(self):
        return f"Const({fmt(self.lsigma)})"


class Noise(_Amplitude):
    """
    k(x, x') = sigma^2 when x and x' are identical, else 0.

    Identity is exact equality of every coordinate, so nearly-equal points
    (e.g. after adding jitter to duplicates) are uncorrelated.
    """

    label = "Noise"

    def _cov(self, X1, X2, same):
        equal = np.all(X1[:, :, None] == X2[:, None, :], axis=0)
        return self.sigma2 * equal.astype(float)

    def to_expr(self):
        return f"Noise({fmt(self.lsigma)})"
