"""
Shared parameter-group plumbing for the GP models.

Every model flattens its parameters as an ordered list of groups, e.g.
(noise, mean, kernel) for exact and sparse GPs and (v, lik, mean, kernel) for
the Monte Carlo GP. Boolean flags select which groups are free:

    noise   observation log noise (exact and sparse GPs)
    domean  mean-function parameters
    kern    kernel parameters
    lik     likelihood parameters (Monte Carlo GP)
"""
import numpy as np

from gpkit.errors import ConfigurationError, InputError
from gpkit.kernels.base import Kernel, as_inputs
from gpkit.means.base import MeanFunction
from gpkit.utils.params import unique_labels

GROUP_FLAGS = {"noise": "noise", "mean": "domean", "kernel": "kern", "lik": "lik"}


def free_groups(noise=True, domean=True, kern=True, lik=True):
    """Group names left free by a set of flags."""
    flags = {"noise": noise, "domean": domean, "kern": kern, "lik": lik}
    return {group for group, flag in GROUP_FLAGS.items() if flags[flag]}


class GPBase:
    """
    Data, mean and kernel common to every model, with flattened parameter access.

    Subclasses implement param_groups, _refresh, log_likelihood and
    grad_log_likelihood. The "likelihood" here is whatever the model treats as
    its data term: the marginal likelihood for exact and sparse GPs, the joint
    density of y and the whitened latents for the Monte Carlo GP.
    """

    kind = "GP"

    def __init__(self, X, y, mean, kernel):
        if not isinstance(mean, MeanFunction):
            raise ConfigurationError(f"not a mean function: {mean!r}")
        if not isinstance(kernel, Kernel):
            raise ConfigurationError(f"not a kernel: {kernel!r}")
        X = as_inputs(X)
        y = np.asarray(y, dtype=float).reshape(-1)
        if X.shape[1] != y.size:
            raise InputError(f"X has {X.shape[1]} columns but y has {y.size} entries")
        if not np.all(np.isfinite(X)) or not np.all(np.isfinite(y)):
            raise InputError("inputs and responses must be finite")
        kernel._check_dim(X.shape[0])
        mean._check_dim(X.shape[0])
        self._X = X
        self._y = y
        self.mean = mean
        self.kernel = kernel

    @property
    def X(self):
        return self._X

    @property
    def y(self):
        return self._y

    @property
    def dim(self):
        return self.X.shape[0]

    @property
    def nobs(self):
        return self.X.shape[1]

    def param_groups(self):
        """Ordered (group name, component) pairs."""
        raise NotImplementedError

    def _selected(self, flags):
        free = free_groups(**flags)
        return [(name, comp) for name, comp in self.param_groups() if name not in GROUP_FLAGS or name in free]

    def _mask(self, flags):
        free = free_groups(**flags)
        return np.concatenate([np.full(comp.num_params(), name not in GROUP_FLAGS or name in free)
                               for name, comp in self.param_groups()]).astype(bool)

    def num_params(self, **flags):
        return sum(comp.num_params() for _, comp in self._selected(flags))

    def get_params(self, **flags):
        """Flattened parameters of the free groups, in group order."""
        parts = [comp.get_params() for _, comp in self._selected(flags)]
        return np.concatenate(parts) if parts else np.zeros(0)

    def set_params(self, params, **flags):
        """Install parameters of the free groups and refresh cached factors."""
        params = np.atleast_1d(np.asarray(params, dtype=float))
        expected = self.num_params(**flags)
        if params.shape != (expected,):
            raise ConfigurationError(f"{self.kind} expects {expected} parameters, got {params.size}")
        start = 0
        for _, comp in self._selected(flags):
            n = comp.num_params()
            comp.set_params(params[start:start + n])
            start += n
        self._refresh()

    def param_names(self, **flags):
        return [name for _, comp in self._selected(flags) for name in comp.param_names()]

    def param_labels(self, **flags):
        """Unique human-readable labels, e.g. for chain column headers."""
        return unique_labels([label for _, comp in self._selected(flags) for label in comp.param_labels()])

    def log_prior(self):
        return float(sum(comp.log_prior() for _, comp in self.param_groups()))

    def grad_log_prior(self, **flags):
        parts = [comp.grad_log_prior() for _, comp in self._selected(flags)]
        return np.concatenate(parts) if parts else np.zeros(0)

    def log_likelihood(self):
        raise NotImplementedError

    def grad_log_likelihood(self, **flags):
        """Gradient of log_likelihood over the free groups."""
        return self._grad_log_likelihood_full()[self._mask(flags)]

    def _grad_log_likelihood_full(self):
        raise NotImplementedError

    def log_target(self):
        """log_likelihood plus the log prior of all parameters."""
        return self.log_likelihood() + self.log_prior()

    def grad_log_target(self, **flags):
        return self.grad_log_likelihood(**flags) + self.grad_log_prior(**flags)

    def _refresh(self):
        raise NotImplementedError

    def _prepare_test_inputs(self, Xstar):
        Xstar = as_inputs(Xstar)
        if Xstar.shape[0] != self.dim:
            raise InputError(f"test inputs have {Xstar.shape[0]} dimensions, the model has {self.dim}")
        return Xstar

    def _type_lines(self):
        lines = []
        for row, params in self.mean.types():
            lines.append(f"  Mean function:\n    Type: {row}, Params: {_fmt_params(params)}")
        lines.append("  Kernel:")
        for row, params in self.kernel.types():
            lines.append(f"    Type: {row}, Params: {_fmt_params(params)}")
        return lines


def _fmt_params(params):
    return "[" + ",".join(f"{p:.4g}" for p in params) + "]"
