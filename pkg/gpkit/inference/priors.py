"""
Univariate priors over (log-scale) hyperparameters.

Parameters without a prior are given the improper flat prior p(theta) ∝ 1,
which contributes nothing to the target or its gradient.
"""
import numpy as np

from gpkit.errors import ConfigurationError

_LOG_SQRT_2PI = 0.5 * np.log(2.0 * np.pi)


class Prior:
    """A univariate log density with its derivative."""

    def logpdf(self, x):
        raise NotImplementedError

    def dlogpdf(self, x):
        raise NotImplementedError


class Flat(Prior):
    """Improper flat prior on the real line."""

    def logpdf(self, x):
        return 0.0

    def dlogpdf(self, x):
        return 0.0

    def __repr__(self):
        return "Flat()"


class Normal(Prior):
    """Normal(mu, s) with s the standard deviation."""

    def __init__(self, mu=0.0, s=1.0):
        if not s > 0:
            raise ConfigurationError(f"Normal prior needs s > 0, got {s}")
        self.mu = float(mu)
        self.s = float(s)

    def logpdf(self, x):
        z = (x - self.mu) / self.s
        return -0.5 * z * z - np.log(self.s) - _LOG_SQRT_2PI

    def dlogpdf(self, x):
        return -(x - self.mu) / (self.s * self.s)

    def __repr__(self):
        return f"Normal({self.mu}, {self.s})"


class Uniform(Prior):
    """Uniform(a, b); the log density is -inf outside [a, b]."""

    def __init__(self, a, b):
        if not b > a:
            raise ConfigurationError(f"Uniform prior needs b > a, got ({a}, {b})")
        self.a = float(a)
        self.b = float(b)

    def logpdf(self, x):
        if self.a <= x <= self.b:
            return -np.log(self.b - self.a)
        return -np.inf

    def dlogpdf(self, x):
        return 0.0

    def __repr__(self):
        return f"Uniform({self.a}, {self.b})"


class PriorSet:
    """Priors aligned with the flattened parameters of one component."""

    def __init__(self, priors):
        self.priors = [Flat() if p is None else p for p in priors]
        for p in self.priors:
            if not isinstance(p, Prior):
                raise ConfigurationError(f"not a prior: {p!r}")

    def __len__(self):
        return len(self.priors)

    def terms(self, values):
        logp = np.array([p.logpdf(v) for p, v in zip(self.priors, values)], dtype=float)
        dlogp = np.array([p.dlogpdf(v) for p, v in zip(self.priors, values)], dtype=float)
        return logp, dlogp

    def __repr__(self):
        return f"PriorSet({self.priors!r})"


def set_priors(target, priors):
    """
    Attach priors to a kernel, mean function, likelihood or observation noise.

    Parameters:
        target: Any component with num_params (e.g. gp.kernel, gp.mean, gp.lik, gp.noise).
        priors: Sequence of Prior objects (None entries mean flat), one per parameter.

    Returns:
        None. The target's log_prior and grad_log_prior include the new terms.
    """
    priors = list(priors)
    if len(priors) != target.num_params():
        raise ConfigurationError(
            f"{type(target).__name__} has {target.num_params()} parameters, got {len(priors)} priors")
    target.priors = PriorSet(priors)
