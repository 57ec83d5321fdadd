import numpy as np

from gpkit.errors import ConfigurationError, InputError
from gpkit.kernels.base import fmt, fmt_vector
from gpkit.means.base import MeanFunction


class MeanZero(MeanFunction):
    """m(x) = 0; no parameters."""

    label = "MeanZero"

    def num_params(self):
        return 0

    def get_params(self):
        return np.zeros(0)

    def set_params(self, params):
        self._check_length(params)

    def param_names(self):
        return []

    def _evaluate(self, X):
        return np.zeros(X.shape[1])

    def _grad(self, X):
        return np.zeros((0, X.shape[1]))

    def to_expr(self):
        return "MeanZero()"


class MeanConst(MeanFunction):
    """m(x) = beta for a scalar beta."""

    label = "MeanConst"

    def __init__(self, beta):
        self.beta = float(beta)

    def num_params(self):
        return 1

    def get_params(self):
        return np.array([self.beta])

    def set_params(self, params):
        self.beta = float(self._check_length(params)[0])

    def param_names(self):
        return ["beta"]

    def _evaluate(self, X):
        return np.full(X.shape[1], self.beta)

    def _grad(self, X):
        return np.ones((1, X.shape[1]))

    def to_expr(self):
        return f"MeanConst({fmt(self.beta)})"


class MeanLin(MeanFunction):
    """m(x) = beta' x with one coefficient per input dimension."""

    label = "MeanLin"

    def __init__(self, beta):
        beta = np.atleast_1d(np.asarray(beta, dtype=float))
        if beta.ndim != 1:
            raise ConfigurationError("MeanLin: coefficients must be a vector")
        self.beta = beta.copy()

    def _check_dim(self, d):
        if d != self.beta.size:
            raise InputError(f"MeanLin has {self.beta.size} coefficients, inputs have {d} dimensions")

    def num_params(self):
        return self.beta.size

    def get_params(self):
        return self.beta.copy()

    def set_params(self, params):
        self.beta = self._check_length(params).copy()

    def param_names(self):
        return [f"beta_{i + 1}" for i in range(self.beta.size)]

    def _evaluate(self, X):
        return self.beta @ X

    def _grad(self, X):
        return X.copy()

    def to_expr(self):
        return f"MeanLin({fmt_vector(self.beta)})"


class MeanPoly(MeanFunction):
    """
    m(x) = sum_j sum_i beta[i, j] x_i^(j+1), a polynomial without intercept.

    Attributes:
        beta: (d, D) coefficients, row i for input dimension i, column j for
            power j + 1. Flattened column by column, so degree 1 matches MeanLin.
    """

    label = "MeanPoly"

    def __init__(self, beta):
        beta = np.asarray(beta, dtype=float)
        if beta.ndim == 1:
            beta = beta.reshape(-1, 1)
        if beta.ndim != 2 or beta.size == 0:
            raise ConfigurationError("MeanPoly: coefficients must be a non-empty (d, D) matrix")
        self.beta = beta.copy()

    @property
    def degree(self):
        return self.beta.shape[1]

    def _check_dim(self, d):
        if d != self.beta.shape[0]:
            raise InputError(f"MeanPoly has coefficients for {self.beta.shape[0]} dimensions, inputs have {d}")

    def num_params(self):
        return self.beta.size

    def get_params(self):
        return self.beta.flatten(order="F")

    def set_params(self, params):
        self.beta = self._check_length(params).reshape(self.beta.shape, order="F")

    def param_names(self):
        d = self.beta.shape[0]
        return [f"beta_{k + 1}" for k in range(d * self.degree)]

    def _powers(self, X):
        # (D, d, n): X ** 1 ... X ** D
        return X[None] ** np.arange(1, self.degree + 1)[:, None, None]

    def _evaluate(self, X):
        return np.einsum("jin,ij->n", self._powers(X), self.beta)

    def _grad(self, X):
        return self._powers(X).reshape(-1, X.shape[1])

    def to_expr(self):
        rows = ", ".join(fmt_vector(row) for row in self.beta)
        return f"MeanPoly([{rows}])"
