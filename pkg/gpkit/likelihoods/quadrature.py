"""
Gauss-Hermite quadrature for expectations under a Gaussian.
"""
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from gpkit.errors import ConfigurationError


@lru_cache(maxsize=None)
def gauss_hermite(order):
    """
    Nodes and weights of the order-n rule for int exp(-x^2) g(x) dx.

    The nodes are the eigenvalues of the symmetric Jacobi matrix of the
    Hermite recurrence. The weights come from the Christoffel sum of the
    orthonormal Hermite polynomials at each node, which keeps the small
    weights in the tails accurate. Nodes are mirrored and weights averaged
    with their mirror so that odd moments vanish. Results are cached and
    read-only.

    Parameters:
        order: Number of nodes, at least 1.

    Returns:
        (nodes, weights), each of length order, nodes ascending.
    """
    if int(order) != order or order < 1:
        raise ConfigurationError(f"quadrature order must be a positive integer, got {order}")
    order = int(order)
    if order == 1:
        nodes, weights = np.zeros(1), np.array([np.sqrt(np.pi)])
    else:
        off = np.sqrt(np.arange(1, order) / 2.0)
        nodes = eigh_tridiagonal(np.zeros(order), off, eigvals_only=True)
        nodes = 0.5 * (nodes - nodes[::-1])
        # orthonormal recurrence: x p_k = b_{k+1} p_{k+1} + b_k p_{k-1}
        prev, cur = np.zeros(order), np.ones(order)
        total = np.ones(order)
        for k in range(1, order):
            prev, cur = cur, (nodes * cur - (off[k - 2] if k > 1 else 0.0) * prev) / off[k - 1]
            total += cur * cur
        weights = np.sqrt(np.pi) / total
        weights = 0.5 * (weights + weights[::-1])
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def gaussian_expectation(func, mu, var, order):
    """
    E[func(f)] for f ~ N(mu, var) by Gauss-Hermite quadrature.

    func must accept an array of f values and return an array of the same shape.
    """
    nodes, weights = gauss_hermite(order)
    f = mu + np.sqrt(2.0 * max(var, 0.0)) * nodes
    return float(weights @ func(f)) / np.sqrt(np.pi)
