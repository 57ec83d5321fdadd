"""
Kernel algebra: sums, products, fixed parameters and input masks.

Parameters of a composite kernel are its children's parameters, flattened
depth-first from left to right.
"""
import numpy as np

from gpkit.errors import ConfigurationError
from gpkit.kernels.base import Kernel


class _Composite(Kernel):

    def __init__(self, kernels):
        flat = []
        for k in kernels:
            if not isinstance(k, Kernel):
                raise ConfigurationError(f"not a kernel: {k!r}")
            # (a + b) + c is stored as one three-term sum
            flat.extend(k.kernels if type(k) is type(self) else [k])
        if not flat:
            raise ConfigurationError(f"{type(self).__name__} needs at least one kernel")
        self.kernels = flat

    def _check_dim(self, d):
        for k in self.kernels:
            k._check_dim(d)

    def num_params(self):
        return sum(k.num_params() for k in self.kernels)

    def get_params(self):
        return np.concatenate([k.get_params() for k in self.kernels])

    def set_params(self, params):
        params = self._check_length(params)
        start = 0
        for k in self.kernels:
            n = k.num_params()
            k.set_params(params[start:start + n])
            start += n

    def param_names(self):
        return [name for k in self.kernels for name in k.param_names()]

    def param_labels(self):
        return [label for k in self.kernels for label in k.param_labels()]

    def _child_prior_terms(self):
        terms = [k.prior_terms() for k in self.kernels]
        return np.concatenate([t[0] for t in terms]), np.concatenate([t[1] for t in terms])

    def types(self):
        return [row for k in self.kernels for row in k.types()]

    def _joined(self, sep):
        parts = []
        for k in self.kernels:
            text = k.to_expr()
            # a sum inside a product needs brackets
            parts.append(f"({text})" if isinstance(k, SumKernel) and sep == " * " else text)
        return sep.join(parts)


class SumKernel(_Composite):
    """k = k_1 + ... + k_n."""

    def _cov(self, X1, X2, same):
        return sum(k._cov(X1, X2, same) for k in self.kernels)

    def _grad_stack(self, X1, X2, same):
        return np.concatenate([k._grad_stack(X1, X2, same) for k in self.kernels])

    def _diag(self, X):
        return sum(k._diag(X) for k in self.kernels)

    def _grad_diag(self, X):
        return np.concatenate([k._grad_diag(X) for k in self.kernels])

    def to_expr(self):
        return self._joined(" + ")


class ProductKernel(_Composite):
    """k = k_1 * ... * k_n, elementwise."""

    def _others(self, parts):
        # product of every factor except the j-th, without dividing
        out = []
        for j in range(len(parts)):
            rest = np.ones_like(parts[0])
            for i, part in enumerate(parts):
                if i != j:
                    rest = rest * part
            out.append(rest)
        return out

    def _cov(self, X1, X2, same):
        K = self.kernels[0]._cov(X1, X2, same)
        for k in self.kernels[1:]:
            K = K * k._cov(X1, X2, same)
        return K

    def _grad_stack(self, X1, X2, same):
        covs = [k._cov(X1, X2, same) for k in self.kernels]
        rests = self._others(covs)
        return np.concatenate([k._grad_stack(X1, X2, same) * rest[None]
                               for k, rest in zip(self.kernels, rests)])

    def _diag(self, X):
        d = self.kernels[0]._diag(X)
        for k in self.kernels[1:]:
            d = d * k._diag(X)
        return d

    def _grad_diag(self, X):
        diags = [k._diag(X) for k in self.kernels]
        rests = self._others(diags)
        return np.concatenate([k._grad_diag(X) * rest[None] for k, rest in zip(self.kernels, rests)])

    def to_expr(self):
        return self._joined(" * ")


class FixedKernel(Kernel):
    """
    Wraps a kernel and hides some of its parameters from get/set and gradients.

    Attributes:
        kernel: The wrapped kernel.
        free: Boolean mask over the wrapped kernel's parameters; False entries
            keep their current value.
    """

    def __init__(self, kernel, free):
        free = np.asarray(free, dtype=bool)
        if free.shape != (kernel.num_params(),):
            raise ConfigurationError(
                f"free mask has {free.size} entries, kernel has {kernel.num_params()} parameters")
        self.kernel = kernel
        self.free = free

    @property
    def label(self):
        return self.kernel.label

    def _check_dim(self, d):
        self.kernel._check_dim(d)

    def num_params(self):
        return int(self.free.sum())

    def get_params(self):
        return self.kernel.get_params()[self.free]

    def set_params(self, params):
        params = self._check_length(params)
        full = self.kernel.get_params()
        full[self.free] = params
        self.kernel.set_params(full)

    def param_names(self):
        return [n for n, f in zip(self.kernel.param_names(), self.free) if f]

    def param_labels(self):
        return [n for n, f in zip(self.kernel.param_labels(), self.free) if f]

    def _child_prior_terms(self):
        logp, dlogp = self.kernel.prior_terms()
        return logp[self.free], dlogp[self.free]

    def _cov(self, X1, X2, same):
        return self.kernel._cov(X1, X2, same)

    def _grad_stack(self, X1, X2, same):
        return self.kernel._grad_stack(X1, X2, same)[self.free]

    def _diag(self, X):
        return self.kernel._diag(X)

    def _grad_diag(self, X):
        return self.kernel._grad_diag(X)[self.free]

    def types(self):
        return [("FixedKernel", self.get_params())] + self.kernel.types()

    def to_expr(self):
        fixed = [n for n, f in zip(self.kernel.param_names(), self.free) if not f]
        return "fix(" + ", ".join([self.kernel.to_expr()] + fixed) + ")"


class MaskedKernel(Kernel):
    """
    Applies a kernel to a subset of the input dimensions.

    Attributes:
        kernel: The wrapped kernel, built for len(active_dims) dimensions.
        active_dims: 0-based indices of the input rows the kernel sees.
    """

    def __init__(self, kernel, active_dims):
        dims = np.atleast_1d(np.asarray(active_dims))
        if dims.size == 0 or dims.ndim != 1 or not np.issubdtype(dims.dtype, np.integer) or dims.min() < 0:
            raise ConfigurationError(f"masked dimensions must be non-negative integers, got {active_dims!r}")
        if np.unique(dims).size != dims.size:
            raise ConfigurationError(f"masked dimensions repeat: {active_dims!r}")
        self.kernel = kernel
        self.active_dims = dims

    @property
    def label(self):
        return self.kernel.label

    def _check_dim(self, d):
        if self.active_dims.max() >= d:
            raise ConfigurationError(
                f"masked dimension {int(self.active_dims.max()) + 1} is out of range for {d}-dimensional inputs")
        self.kernel._check_dim(self.active_dims.size)

    def num_params(self):
        return self.kernel.num_params()

    def get_params(self):
        return self.kernel.get_params()

    def set_params(self, params):
        self.kernel.set_params(params)

    def param_names(self):
        return self.kernel.param_names()

    def param_labels(self):
        return self.kernel.param_labels()

    def _child_prior_terms(self):
        return self.kernel.prior_terms()

    def _cov(self, X1, X2, same):
        return self.kernel._cov(X1[self.active_dims], X2[self.active_dims], same)

    def _grad_stack(self, X1, X2, same):
        return self.kernel._grad_stack(X1[self.active_dims], X2[self.active_dims], same)

    def _diag(self, X):
        return self.kernel._diag(X[self.active_dims])

    def _grad_diag(self, X):
        return self.kernel._grad_diag(X[self.active_dims])

    def types(self):
        return [("Masked", self.get_params())] + self.kernel.types()

    def to_expr(self):
        dims = ", ".join(str(int(i) + 1) for i in self.active_dims)
        return f"masked({self.kernel.to_expr()}, [{dims}])"
