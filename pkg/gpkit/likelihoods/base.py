"""
Likelihood base class: per-observation log densities p(y_i | f_i, theta).
"""
import numpy as np

from gpkit import settings
from gpkit.errors import ConfigurationError, InputError
from gpkit.likelihoods.quadrature import gaussian_expectation
from gpkit.utils.params import Parameterized


def _as_scalar_if_0d(value, like):
    return float(value) if np.ndim(like) == 0 else value


class Likelihood(Parameterized):
    """
    Observation model with log density, derivatives and response moments.

    Subclasses implement _check_response, _logpdf, _dlogpdf_df, _dlogpdf_dtheta,
    and conditional_mean / conditional_var (moments of y given f).
    Public methods accept scalars or equally-shaped arrays of y and f.
    """

    # the response must be an integer for count kinds
    integer_response = False

    def num_params(self):
        return 0

    def get_params(self):
        return np.zeros(0)

    def set_params(self, params):
        self._check_length(params)

    def param_names(self):
        return []

    def validate(self, y):
        """Raise InputError unless every response is in the support of this kind."""
        y = np.asarray(y, dtype=float)
        bad = ~np.isfinite(y) | ~self._check_response(y)
        if self.integer_response:
            bad |= y != np.round(y)
        if np.any(bad):
            first = np.flatnonzero(np.atleast_1d(bad))[0]
            raise InputError(f"{type(self).__name__}: invalid response {np.atleast_1d(y)[first]!r} "
                             f"at observation {first + 1}")
        return y

    def _check_response(self, y):
        return np.ones_like(y, dtype=bool)

    def log_density(self, y, f):
        """log p(y | f, theta)."""
        y = self.validate(y)
        return _as_scalar_if_0d(self._logpdf(y, np.asarray(f, dtype=float)), y)

    def dlog_density_df(self, y, f):
        """Derivative of log_density with respect to f."""
        y = self.validate(y)
        return _as_scalar_if_0d(self._dlogpdf_df(y, np.asarray(f, dtype=float)), y)

    def dlog_density_dtheta(self, y, f):
        """
        Derivatives with respect to the likelihood's own log-parameters.

        Returns:
            (num_params,) for scalar y and f, otherwise (num_params, n).
        """
        y = self.validate(y)
        f = np.asarray(f, dtype=float)
        out = self._dlogpdf_dtheta(y, f)
        if np.ndim(y) == 0:
            return np.asarray(out, dtype=float).reshape(self.num_params())
        return np.asarray(out, dtype=float).reshape(self.num_params(), np.size(y))

    def _logpdf(self, y, f):
        raise NotImplementedError

    def _dlogpdf_df(self, y, f):
        raise NotImplementedError

    def _dlogpdf_dtheta(self, y, f):
        return np.zeros((0,) + np.shape(y))

    def conditional_mean(self, f):
        """E[y | f]."""
        raise NotImplementedError

    def conditional_var(self, f):
        """Var[y | f]."""
        raise NotImplementedError

    def predictive_moments(self, mu, var, quad_order=None):
        """
        Mean and variance of y under int p(y | f) N(f; mu, var) df.

        Parameters:
            mu: Latent predictive mean.
            var: Latent predictive variance, non-negative.
            quad_order: Gauss-Hermite order (default from settings).

        Returns:
            (mean, variance) as floats.
        """
        if var < 0:
            raise ConfigurationError(f"latent variance must be non-negative, got {var}")
        order = settings.QUAD_ORDER if quad_order is None else quad_order
        mean = gaussian_expectation(self.conditional_mean, mu, var, order)
        second = gaussian_expectation(lambda f: self.conditional_var(f) + self.conditional_mean(f) ** 2,
                                      mu, var, order)
        return mean, max(second - mean * mean, 0.0)

    def to_expr(self):
        raise NotImplementedError

    def types(self):
        return [(type(self).__name__, self.get_params())]

    def __repr__(self):
        return self.to_expr()
