"""
Parameter plumbing shared by kernels, means, likelihoods and observation noise.
"""
import numpy as np

from gpkit.errors import ConfigurationError


class Parameterized:
    """
    Something with a flat vector of trainable parameters and optional priors.

    Subclasses implement num_params, get_params, set_params and param_names.
    Composite subclasses override _child_prior_terms so priors attached to
    children are collected in parameter order.
    """

    priors = None
    label = ""

    def num_params(self):
        raise NotImplementedError

    def get_params(self):
        raise NotImplementedError

    def set_params(self, params):
        raise NotImplementedError

    def param_names(self):
        raise NotImplementedError

    def param_labels(self):
        """Human-readable names, e.g. "SE log length"."""
        return [f"{self.label} {_DESCRIPTIONS.get(name.split('_')[0], name)}"
                + (f" {name.split('_')[1]}" if "_" in name else "")
                for name in self.param_names()]

    def _check_length(self, params):
        params = np.atleast_1d(np.asarray(params, dtype=float))
        if params.shape != (self.num_params(),):
            raise ConfigurationError(
                f"{type(self).__name__} expects {self.num_params()} parameters, got {params.size}")
        return params

    def prior_terms(self):
        """
        Per-parameter log prior densities and their derivatives.

        Returns:
            (logp, dlogp), both of length num_params; parameters without a
            prior (improper flat) contribute zeros.
        """
        if self.priors is not None:
            return self.priors.terms(self.get_params())
        return self._child_prior_terms()

    def _child_prior_terms(self):
        n = self.num_params()
        return np.zeros(n), np.zeros(n)

    def log_prior(self):
        return float(np.sum(self.prior_terms()[0]))

    def grad_log_prior(self):
        return self.prior_terms()[1]


_DESCRIPTIONS = {
    "ll": "log length",
    "lsigma": "log scale",
    "lp": "log period",
    "lalpha": "log alpha",
    "lc": "log shift",
    "beta": "beta",
}


def unique_labels(labels):
    """Append a counter to repeated labels so they can serve as column headers."""
    seen = {}
    out = []
    for label in labels:
        count = seen.get(label, 0) + 1
        seen[label] = count
        out.append(label if count == 1 else f"{label} ({count})")
    return out


class ObservationNoise(Parameterized):
    """Log standard deviation of Gaussian observation noise."""

    label = "Noise"

    def __init__(self, log_noise):
        self.value = float(log_noise)

    def num_params(self):
        return 1

    def get_params(self):
        return np.array([self.value])

    def set_params(self, params):
        self.value = float(self._check_length(params)[0])

    def param_names(self):
        return ["lsigma"]

    def param_labels(self):
        return ["Noise"]

    @property
    def variance(self):
        return float(np.exp(2.0 * self.value))
