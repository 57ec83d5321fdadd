"""
Kernel base class and the Gram-matrix container.

Inputs follow the column convention: a set of n points in d dimensions is a
(d, n) array, so a row-major data table has to be transposed first.
"""
from dataclasses import dataclass

import numpy as np

from gpkit.errors import ConfigurationError, InputError
from gpkit.utils.params import Parameterized


def as_inputs(X):
    """Coerce to a float (d, n) array; a 1-D array is n points in one dimension."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 0:
        X = X.reshape(1, 1)
    elif X.ndim == 1:
        X = X.reshape(1, -1)
    elif X.ndim != 2:
        raise InputError(f"inputs must be a (d, n) matrix, got shape {X.shape}")
    return X


def as_point(x):
    """Coerce a single point to a (d, 1) column."""
    return np.asarray(x, dtype=float).reshape(-1, 1)


def sqdist(X1, X2):
    """
    Squared Euclidean distances between columns, max(|x|^2 + |x'|^2 - 2<x, x'>, 0).

    Cancellation can make the expanded form slightly negative; it is clipped at 0.
    """
    n1 = np.einsum("ij,ij->j", X1, X1)
    n2 = np.einsum("ij,ij->j", X2, X2)
    D = n1[:, None] + n2[None, :] - 2.0 * (X1.T @ X2)
    return np.maximum(D, 0.0)


def symmetrize(K):
    """Copy the upper triangle onto the lower one so K is exactly symmetric."""
    K = np.triu(K)
    K += np.triu(K, 1).T
    return K


@dataclass
class GramMatrix:
    """Dense symmetric covariance matrix and the jitter its factorization needed."""

    values: np.ndarray
    jitter_applied: float = 0.0

    @property
    def shape(self):
        return self.values.shape

    def add_diagonal(self, value):
        """Add value to every diagonal entry in place (observation noise)."""
        self.values[np.diag_indices(self.shape[0])] += value
        return self

    def cholesky(self, start=None, cap=None, always=False):
        """Factor with escalating jitter, recording the jitter used."""
        from gpkit.utils.linalg import jittered_cholesky

        L, self.jitter_applied = jittered_cholesky(self.values, start=start, cap=cap, always=always)
        return L


class Kernel(Parameterized):
    """
    Covariance function k(x, x') with log-scale hyperparameters.

    Subclasses implement _cov and _grad_stack on validated (d, n) inputs; the
    public methods take care of shapes, symmetry and dimension checks.
    """

    # Input dimension the parameters were built for; None accepts any d.
    dim = None

    def _check_dim(self, d):
        if self.dim is not None and d != self.dim:
            raise ConfigurationError(
                f"{type(self).__name__} has parameters for {self.dim} dimensions, inputs have {d}")

    def _prepare(self, X1, X2):
        X1 = as_inputs(X1)
        if X2 is not None:
            X2 = as_inputs(X2)
            if X1.shape[0] != X2.shape[0]:
                raise InputError(f"input dimensions differ: {X1.shape[0]} and {X2.shape[0]}")
        self._check_dim(X1.shape[0])
        return X1, X2

    def cov(self, X1, X2=None):
        """
        Covariance matrix between columns of X1 and X2 (X2=None: symmetric Gram matrix).
        """
        X1, X2 = self._prepare(X1, X2)
        if X2 is None:
            return symmetrize(self._cov(X1, X1, True))
        return self._cov(X1, X2, False)

    def gram(self, X):
        """Gram matrix of the columns of X."""
        return GramMatrix(self.cov(X))

    def cross_gram(self, X, Xstar):
        """Rectangular (n, m) covariance between columns of X and Xstar."""
        return self.cov(X, Xstar)

    def evaluate(self, x, x2):
        """k(x, x') for two single points given as length-d vectors."""
        x, x2 = as_point(x), as_point(x2)
        if x.shape != x2.shape:
            raise InputError(f"points have different dimensions: {x.shape[0]} and {x2.shape[0]}")
        return float(self.cov(x, x2)[0, 0])

    def __call__(self, x, x2):
        return self.evaluate(x, x2)

    def grad_stack(self, X1, X2=None):
        """
        Derivatives of the covariance matrix with respect to each log-parameter.

        Returns:
            (num_params, n, m) array; entry j is dK/dtheta_j.
        """
        X1, X2 = self._prepare(X1, X2)
        if X2 is None:
            return self._grad_stack(X1, X1, True)
        return self._grad_stack(X1, X2, False)

    def grad_params(self, x, x2):
        """Gradient of k(x, x') with respect to the log-parameters, in parameter order."""
        x, x2 = as_point(x), as_point(x2)
        if x.shape != x2.shape:
            raise InputError(f"points have different dimensions: {x.shape[0]} and {x2.shape[0]}")
        return self.grad_stack(x, x2)[:, 0, 0]

    def diag(self, X):
        """Prior variances k(x_i, x_i) without forming the Gram matrix."""
        X, _ = self._prepare(X, None)
        return self._diag(X)

    def grad_diag(self, X):
        """(num_params, n) derivatives of diag(X)."""
        X, _ = self._prepare(X, None)
        return self._grad_diag(X)

    def _diag(self, X):
        return np.array([self._cov(X[:, [i]], X[:, [i]], True)[0, 0] for i in range(X.shape[1])])

    def _grad_diag(self, X):
        out = np.empty((self.num_params(), X.shape[1]))
        for i in range(X.shape[1]):
            out[:, i] = self._grad_stack(X[:, [i]], X[:, [i]], True)[:, 0, 0]
        return out

    def _cov(self, X1, X2, same):
        raise NotImplementedError

    def _grad_stack(self, X1, X2, same):
        raise NotImplementedError

    def to_expr(self):
        """Expression text the command-line parser turns back into this kernel."""
        raise NotImplementedError

    def types(self):
        """(type name, params) rows for model summaries."""
        return [(type(self).__name__, self.get_params())]

    def __add__(self, other):
        from gpkit.kernels.composite import SumKernel

        return SumKernel([self, other])

    def __mul__(self, other):
        from gpkit.kernels.composite import ProductKernel

        return ProductKernel([self, other])

    def __repr__(self):
        return self.to_expr()


def fmt(value):
    """Shortest text that reads back to the same float."""
    return repr(float(value))


def fmt_vector(values):
    return "[" + ", ".join(fmt(v) for v in values) + "]"
