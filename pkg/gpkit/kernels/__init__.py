"""
Kernel constructors.

A scalar length scale builds the isotropic variant of a kernel, a vector of
length scales the ARD variant with one scale per input dimension.
"""
import numpy as np

from gpkit.errors import ConfigurationError
from gpkit.kernels.base import GramMatrix, Kernel, as_inputs, sqdist
from gpkit.kernels.composite import FixedKernel, MaskedKernel, ProductKernel, SumKernel
from gpkit.kernels.constant import Const, Noise
from gpkit.kernels.dot_product import LinArd, LinIso, Poly
from gpkit.kernels.stationary import (Mat12Ard, Mat12Iso, Mat32Ard, Mat32Iso, Mat52Ard, Mat52Iso,
                                      Periodic, RQArd, RQIso, SEArd, SEIso, StationaryKernel)

_MATERN = {
    0.5: (Mat12Iso, Mat12Ard),
    1.5: (Mat32Iso, Mat32Ard),
    2.5: (Mat52Iso, Mat52Ard),
}


def _is_vector(ll):
    return np.ndim(ll) == 1


def SE(ll, lsigma):
    """Squared exponential kernel with log length scale(s) ll and log signal std lsigma."""
    return SEArd(ll, lsigma) if _is_vector(ll) else SEIso(ll, lsigma)


def Matern(nu, ll, lsigma):
    """
    Matern kernel of order nu, one of 1/2, 3/2 or 5/2.

    Parameters:
        nu: The order, as a float or a "a/b" string.
        ll: Log length scale, scalar (Iso) or vector (ARD).
        lsigma: Log signal standard deviation.
    """
    if isinstance(nu, str):
        num, _, den = nu.partition("/")
        try:
            nu = float(num) / float(den or 1)
        except ValueError:
            raise ConfigurationError(f"Matern: cannot read order {nu!r}")
    classes = _MATERN.get(float(nu))
    if classes is None:
        raise ConfigurationError(f"Matern: order must be 1/2, 3/2 or 5/2, got {nu}")
    iso, ard = classes
    return ard(ll, lsigma) if _is_vector(ll) else iso(ll, lsigma)


def RQ(ll, lsigma, lalpha):
    """Rational quadratic kernel with log length scale(s), log signal std and log alpha."""
    return RQArd(ll, lsigma, lalpha) if _is_vector(ll) else RQIso(ll, lsigma, lalpha)


def Lin(ll):
    """Linear kernel; no amplitude parameter."""
    return LinArd(ll) if _is_vector(ll) else LinIso(ll)


def Fixed(kernel, *names):
    """
    Hold some of a kernel's parameters at their current values.

    Parameters:
        kernel: The kernel to wrap.
        names: Short parameter names to fix (e.g. "lsigma", "ll_2"); none fixes all.

    Returns:
        A FixedKernel exposing only the remaining parameters.
    """
    available = kernel.param_names()
    unknown = [n for n in names if n not in available]
    if unknown:
        raise ConfigurationError(
            f"fix: {type(kernel).__name__} has no parameter {unknown[0]!r} (has {', '.join(available)})")
    free = np.array([bool(names) and n not in names for n in available], dtype=bool)
    return FixedKernel(kernel, free)


def Masked(kernel, active_dims):
    """Apply kernel to the input rows listed (0-based) in active_dims."""
    return MaskedKernel(kernel, active_dims)


__all__ = [
    "GramMatrix", "Kernel", "StationaryKernel", "SumKernel", "ProductKernel", "FixedKernel", "MaskedKernel",
    "SEIso", "SEArd", "Mat12Iso", "Mat12Ard", "Mat32Iso", "Mat32Ard", "Mat52Iso", "Mat52Ard",
    "RQIso", "RQArd", "Periodic", "LinIso", "LinArd", "Poly", "Const", "Noise",
    "SE", "Matern", "RQ", "Lin", "Fixed", "Masked", "as_inputs", "sqdist",
]
