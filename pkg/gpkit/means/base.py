"""
Mean function base class and its sum/product composites.

Mean parameters live on the natural scale, they are not log-transformed.
"""
import numpy as np

from gpkit.errors import ConfigurationError
from gpkit.kernels.base import as_inputs
from gpkit.utils.params import Parameterized


class MeanFunction(Parameterized):
    """m(x) evaluated column by column on (d, n) inputs."""

    def evaluate(self, X):
        """
        Mean at each column of X.

        Returns:
            Vector of length n.
        """
        X = as_inputs(X)
        self._check_dim(X.shape[0])
        return self._evaluate(X)

    def __call__(self, X):
        return self.evaluate(X)

    def grad_params(self, X):
        """(num_params, n) partial derivatives of the mean at each column."""
        X = as_inputs(X)
        self._check_dim(X.shape[0])
        return self._grad(X)

    def _check_dim(self, d):
        pass

    def _evaluate(self, X):
        raise NotImplementedError

    def _grad(self, X):
        raise NotImplementedError

    def to_expr(self):
        raise NotImplementedError

    def types(self):
        return [(type(self).__name__, self.get_params())]

    def __add__(self, other):
        return SumMean([self, other])

    def __mul__(self, other):
        return ProdMean([self, other])

    def __repr__(self):
        return self.to_expr()


class _CompositeMean(MeanFunction):

    def __init__(self, means):
        flat = []
        for m in means:
            if not isinstance(m, MeanFunction):
                raise ConfigurationError(f"not a mean function: {m!r}")
            flat.extend(m.means if type(m) is type(self) else [m])
        self.means = flat

    def _check_dim(self, d):
        for m in self.means:
            m._check_dim(d)

    def num_params(self):
        return sum(m.num_params() for m in self.means)

    def get_params(self):
        return np.concatenate([m.get_params() for m in self.means])

    def set_params(self, params):
        params = self._check_length(params)
        start = 0
        for m in self.means:
            n = m.num_params()
            m.set_params(params[start:start + n])
            start += n

    def param_names(self):
        return [name for m in self.means for name in m.param_names()]

    def param_labels(self):
        return [label for m in self.means for label in m.param_labels()]

    def _child_prior_terms(self):
        terms = [m.prior_terms() for m in self.means]
        return np.concatenate([t[0] for t in terms]), np.concatenate([t[1] for t in terms])

    def types(self):
        return [row for m in self.means for row in m.types()]


class SumMean(_CompositeMean):
    """m = m_1 + ... + m_n."""

    def _evaluate(self, X):
        return sum(m._evaluate(X) for m in self.means)

    def _grad(self, X):
        return np.concatenate([m._grad(X) for m in self.means])

    def to_expr(self):
        return " + ".join(m.to_expr() for m in self.means)


class ProdMean(_CompositeMean):
    """m = m_1 * ... * m_n."""

    def _evaluate(self, X):
        out = np.ones(X.shape[1])
        for m in self.means:
            out = out * m._evaluate(X)
        return out

    def _grad(self, X):
        values = [m._evaluate(X) for m in self.means]
        rows = []
        for j, m in enumerate(self.means):
            rest = np.ones(X.shape[1])
            for i, v in enumerate(values):
                if i != j:
                    rest = rest * v
            rows.append(m._grad(X) * rest[None])
        return np.concatenate(rows)

    def to_expr(self):
        return " * ".join(f"({m.to_expr()})" if isinstance(m, SumMean) else m.to_expr() for m in self.means)
