"""
Dense linear-algebra helpers: Cholesky with escalating jitter, extending a
factor by new rows, and the forward-mode derivative of the factor.
"""
import numpy as np
import scipy.linalg as sla
from loguru import logger

from gpkit import settings
from gpkit.errors import NumericalError


def jittered_cholesky(K, start=None, cap=None, always=False):
    """
    Lower Cholesky factor of a symmetric matrix, adding diagonal jitter when needed.

    The jitter is relative to the mean diagonal: it starts at start * tr(K)/n and
    doubles until cap * tr(K)/n is exceeded.

    Parameters:
        K: (n, n) symmetric matrix.
        start: Relative starting jitter (defaults to settings.JITTER_START).
        cap: Relative jitter cap (defaults to settings.JITTER_CAP).
        always: Add the starting jitter even when K factorizes as it is.

    Returns:
        (L, jitter) with L lower triangular and L L^T = K + jitter I.
    """
    start = settings.JITTER_START if start is None else start
    cap = settings.JITTER_CAP if cap is None else cap
    n = K.shape[0]
    scale = np.trace(K) / n if n else 1.0
    if not np.isfinite(scale) or scale <= 0.0:
        scale = 1.0

    jitter = start * scale if always else 0.0
    limit = cap * scale
    while True:
        try:
            A = K + jitter * np.eye(n) if jitter else K
            L = sla.cholesky(A, lower=True, check_finite=True)
            if jitter:
                logger.debug("Cholesky needed jitter {:.3g} (n={})", jitter, n)
            return L, jitter
        except (sla.LinAlgError, ValueError):
            jitter = start * scale if jitter == 0.0 else 2.0 * jitter
            if jitter > limit:
                raise NumericalError("covariance matrix is not positive definite",
                                     jitter=jitter / 2.0)


def logdet_from_cholesky(L):
    """log|A| for A = L L^T."""
    return 2.0 * np.sum(np.log(np.diag(L)))


def cholesky_append(L, cross, diag):
    """
    Factor row for one appended point: O(n^2) via a single triangular solve.

    Parameters:
        L: (n, n) lower factor of the current matrix.
        cross: (n,) covariances between existing points and the new one.
        diag: Variance of the new point (including noise and jitter).

    Returns:
        (row, pivot) so that [[L, 0], [row, pivot]] factors the extended matrix.
    """
    if L.shape[0] == 0:
        row = np.zeros(0)
    else:
        row = sla.solve_triangular(L, cross, lower=True, check_finite=False)
    pivot2 = diag - row @ row
    if not pivot2 > 0.0:
        raise NumericalError("appended point makes the covariance indefinite")
    return row, np.sqrt(pivot2)


def _phi(A):
    """Lower triangle of A with the diagonal halved."""
    out = np.tril(A)
    out[np.diag_indices_from(out)] *= 0.5
    return out


def cholesky_derivative_unblocked(L, dK):
    """
    Directional derivative of the Cholesky factor, dL = L Phi(L^-1 dK L^-T).

    Reference form used on diagonal blocks by the blocked algorithm.
    """
    P = sla.solve_triangular(L, dK, lower=True, check_finite=False)
    P = sla.solve_triangular(L, P.T, lower=True, check_finite=False).T
    return L @ _phi(P)


def cholesky_derivative(L, dK, block_size=None):
    """
    Blocked forward-mode derivative of the Cholesky factor along dK.

    Columns are processed in panels of block_size: each diagonal panel uses
    the unblocked formula on a corrected right-hand side and the panel below it
    is obtained with one triangular solve.

    Parameters:
        L: (n, n) lower Cholesky factor of K.
        dK: (n, n) symmetric perturbation direction.
        block_size: Panel width (defaults to settings.CHOL_BLOCK_SIZE).

    Returns:
        (n, n) lower-triangular dL with dL L^T + L dL^T = dK.
    """
    nb = block_size or settings.CHOL_BLOCK_SIZE
    n = L.shape[0]
    dL = np.zeros_like(L)
    for j in range(0, n, nb):
        k = min(n, j + nb)
        R, D = L[j:k, :j], L[j:k, j:k]
        B, C = L[k:, :j], L[k:, j:k]
        dR, dB = dL[j:k, :j], dL[k:, :j]

        M = dK[j:k, j:k] - dR @ R.T - R @ dR.T
        dD = cholesky_derivative_unblocked(D, M)
        dL[j:k, j:k] = dD

        if k < n:
            rhs = dK[k:, j:k] - dB @ R.T - B @ dR.T - C @ dD.T
            dL[k:, j:k] = sla.solve_triangular(D, rhs.T, lower=True, check_finite=False).T
    return dL
