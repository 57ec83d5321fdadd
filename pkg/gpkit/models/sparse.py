"""
Inducing-point approximations sharing one low-rank core.

With inducing inputs Xu, Q = K_fu K_uu^-1 K_uf and V = chol(K_uu)^-1 K_uf, so
Q = V'V. Each scheme approximates the training covariance as C = Q + Lambda:

    SoR, DTC   Lambda = sigma^2 I
    FITC       Lambda = diag(K - Q) + sigma^2 I
    FSA        Lambda = blockdiag(K - Q) + sigma^2 I

and every solve goes through Woodbury with A = I + V Lambda^-1 V', so the cost
is O(n m^2) plus the block factorizations for FSA. SoR also uses Q for the
test covariance; the others use the exact prior variance at test points.
"""
import numpy as np
import scipy.linalg as sla
from loguru import logger

from gpkit.errors import ConfigurationError, InputError
from gpkit.kernels.base import as_inputs, sqdist
from gpkit.models.base import GPBase
from gpkit.utils.linalg import jittered_cholesky, logdet_from_cholesky
from gpkit.utils.params import ObservationNoise

_LOG_2PI = np.log(2.0 * np.pi)

SCHEMES = ("SoR", "DTC", "FITC", "FSA")


class _DiagonalCorrection:
    """Lambda as a vector of diagonal entries."""

    def __init__(self, lam):
        if np.any(lam <= 0.0):
            raise ConfigurationError("training conditional variance must be positive; increase the noise")
        self.lam = lam

    def solve(self, B):
        return B / (self.lam[:, None] if B.ndim == 2 else self.lam)

    def logdet(self):
        return float(np.sum(np.log(self.lam)))

    def inv_diag(self):
        return 1.0 / self.lam

    @property
    def nbytes(self):
        return self.lam.nbytes


class _BlockCorrection:
    """Lambda as dense diagonal blocks over a partition of the training points."""

    def __init__(self, blocks, chols):
        self.blocks = blocks
        self.chols = chols

    def solve(self, B):
        out = np.empty_like(B)
        for idx, Lb in zip(self.blocks, self.chols):
            out[idx] = sla.cho_solve((Lb, True), B[idx], check_finite=False)
        return out

    def logdet(self):
        return float(sum(logdet_from_cholesky(Lb) for Lb in self.chols))

    def inv_blocks(self):
        return [sla.cho_solve((Lb, True), np.eye(Lb.shape[0]), check_finite=False) for Lb in self.chols]

    @property
    def nbytes(self):
        return sum(Lb.nbytes for Lb in self.chols)


def check_blocks(blocks, n):
    """Validate a partition of range(n) and return it as integer arrays."""
    if blocks is None:
        raise ConfigurationError("FSA needs block indices")
    blocks = [np.asarray(b, dtype=int).reshape(-1) for b in blocks]
    if any(b.size == 0 for b in blocks):
        raise ConfigurationError("FSA blocks must not be empty")
    flat = np.concatenate(blocks) if blocks else np.zeros(0, dtype=int)
    if flat.size != n or not np.array_equal(np.sort(flat), np.arange(n)):
        raise ConfigurationError(f"FSA blocks must partition the {n} training points exactly once")
    return blocks


def nearest_inducing_blocks(X, Xu):
    """
    Partition training points by their nearest inducing point.

    Ties go to the inducing point listed first; inducing points with no
    training points produce no block.

    Returns:
        List of 0-based index arrays, one per non-empty block.
    """
    X, Xu = as_inputs(X), as_inputs(Xu)
    nearest = np.argmin(sqdist(Xu, X), axis=0)
    return [np.flatnonzero(nearest == j) for j in range(Xu.shape[1]) if np.any(nearest == j)]


class SparseGP(GPBase):
    """
    Sparse GP regression with a fixed set of inducing inputs.

    Attributes:
        scheme: One of "SoR", "DTC", "FITC", "FSA".
        Xu: (d, m) inducing inputs.
        blocks: Partition of the training points (FSA only).
        noise: Observation noise, stored as log standard deviation.
        mll: Log marginal likelihood of the scheme's approximate prior.
    """

    kind = "SparseGP"

    def __init__(self, scheme, X, Xu, y, mean, kernel, log_noise, blocks=None):
        super().__init__(X, y, mean, kernel)
        canonical = {s.lower(): s for s in SCHEMES}.get(str(scheme).lower())
        if canonical is None:
            raise ConfigurationError(f"unknown sparse scheme {scheme!r}; choose one of {', '.join(SCHEMES)}")
        self.scheme = canonical
        Xu = as_inputs(Xu)
        if Xu.shape[0] != self.dim:
            raise InputError(f"inducing inputs have {Xu.shape[0]} dimensions, the data has {self.dim}")
        if Xu.shape[1] > self.nobs:
            raise ConfigurationError(f"{Xu.shape[1]} inducing points for only {self.nobs} observations")
        self.Xu = Xu
        self.blocks = check_blocks(blocks, self.nobs) if canonical == "FSA" else None
        self.noise = ObservationNoise(log_noise)
        self._refresh()

    def param_groups(self):
        return [("noise", self.noise), ("mean", self.mean), ("kernel", self.kernel)]

    def _refresh(self):
        X, Xu = self.X, self.Xu
        sigma2 = self.noise.variance
        self.Luu, self.jitter = jittered_cholesky(self.kernel.cov(Xu))
        Kuf = self.kernel.cov(Xu, X)
        self.V = sla.solve_triangular(self.Luu, Kuf, lower=True, check_finite=False)

        if self.scheme in ("SoR", "DTC"):
            self.lam = _DiagonalCorrection(np.full(self.nobs, sigma2))
        elif self.scheme == "FITC":
            q = np.einsum("ij,ij->j", self.V, self.V)
            self.lam = _DiagonalCorrection(np.maximum(self.kernel.diag(X) - q, 0.0) + sigma2)
        else:
            chols = []
            for idx in self.blocks:
                Vb = self.V[:, idx]
                Kb = self.kernel.cov(X[:, idx]) - Vb.T @ Vb
                Kb[np.diag_indices(idx.size)] += sigma2
                chols.append(jittered_cholesky(Kb)[0])
            self.lam = _BlockCorrection(self.blocks, chols)

        self.LiVt = self.lam.solve(self.V.T)
        A = self.V @ self.LiVt
        A[np.diag_indices_from(A)] += 1.0
        self.LA = sla.cholesky(A, lower=True, check_finite=False)

        self._mX = self.mean.evaluate(X)
        yc = self.y - self._mX
        self.alpha = self._solve(yc)
        self.mll = float(-0.5 * yc @ self.alpha - 0.5 * (self.lam.logdet() + logdet_from_cholesky(self.LA))
                         - 0.5 * self.nobs * _LOG_2PI)
        logger.debug("fitted {} sparse GP: n={} m={} mll={:.6g}", self.scheme, self.nobs, Xu.shape[1], self.mll)

    def _solve(self, B):
        """C^-1 B by Woodbury."""
        r = self.lam.solve(B)
        c = sla.cho_solve((self.LA, True), self.V @ r, check_finite=False)
        return r - self.LiVt @ c

    @property
    def nbytes(self):
        """Bytes held by the cached factors."""
        arrays = (self.Luu, self.V, self.LiVt, self.LA, self.alpha, self._mX)
        return int(sum(a.nbytes for a in arrays) + self.lam.nbytes)

    def log_marginal(self):
        return self.mll

    def log_likelihood(self):
        return self.mll

    def _grad_log_likelihood_full(self):
        X, Xu = self.X, self.Xu
        alpha = self.alpha
        P = sla.solve_triangular(self.Luu, self.V, lower=True, trans="T", check_finite=False)
        # C^-1 P' and the rows of C^-1 = Lambda^-1 - M M' with M = Lambda^-1 V' LA^-T
        CiPt = self._solve(P.T)
        M = sla.solve_triangular(self.LA, self.LiVt.T, lower=True, check_finite=False).T
        Pa = P @ alpha
        PW = np.outer(Pa, alpha) - CiPt.T
        PWPt = np.outer(Pa, Pa) - P @ CiPt

        grad_kern = np.zeros(self.kernel.num_params())
        if self.scheme in ("SoR", "DTC"):
            trace_W = alpha @ alpha - np.sum(self.lam.inv_diag() - np.einsum("ij,ij->i", M, M))
        elif self.scheme == "FITC":
            w = alpha * alpha - (self.lam.inv_diag() - np.einsum("ij,ij->i", M, M))
            trace_W = np.sum(w)
            PW = PW - P * w[None, :]
            PWPt = PWPt - (P * w[None, :]) @ P.T
            grad_kern += 0.5 * self.kernel.grad_diag(X) @ w
        else:
            trace_W = 0.0
            for idx, Lam_inv in zip(self.blocks, self.lam.inv_blocks()):
                Mb = M[idx]
                Wb = np.outer(alpha[idx], alpha[idx]) - (Lam_inv - Mb @ Mb.T)
                trace_W += np.trace(Wb)
                Pb = P[:, idx]
                PW[:, idx] -= Pb @ Wb
                PWPt -= Pb @ Wb @ Pb.T
                grad_kern += 0.5 * np.einsum("ij,pij->p", Wb, self.kernel.grad_stack(X[:, idx]))

        grad_kern += np.einsum("ij,pij->p", PW, self.kernel.grad_stack(Xu, X))
        grad_kern -= 0.5 * np.einsum("ij,pij->p", PWPt, self.kernel.grad_stack(Xu))
        grad_noise = self.noise.variance * trace_W
        grad_mean = self.mean.grad_params(X) @ alpha
        return np.concatenate([[grad_noise], grad_mean, grad_kern])

    def grad_log_marginal(self, **flags):
        return self.grad_log_likelihood(**flags)

    def _test_blocks(self, Xstar, test_blocks):
        if test_blocks is not None:
            test_blocks = [np.asarray(b, dtype=int).reshape(-1) for b in test_blocks]
            if len(test_blocks) != len(self.blocks):
                raise ConfigurationError(f"expected {len(self.blocks)} test blocks, got {len(test_blocks)}")
            return test_blocks
        # a test point joins the block of its nearest training point
        owner = np.empty(self.nobs, dtype=int)
        for b, idx in enumerate(self.blocks):
            owner[idx] = b
        nearest = owner[np.argmin(sqdist(self.X, Xstar), axis=0)]
        return [np.flatnonzero(nearest == b) for b in range(len(self.blocks))]

    def predict_f(self, Xstar, test_blocks=None):
        """
        Latent predictive mean and variance at the columns of Xstar.

        Parameters:
            Xstar: (d, m) test inputs.
            test_blocks: FSA only; index arrays into the test points, one per
                training block. By default each test point joins the block of
                its nearest training input.

        Returns:
            (mean, variance), variances floored at 0.
        """
        Xstar = self._prepare_test_inputs(Xstar)
        Vs = sla.solve_triangular(self.Luu, self.kernel.cov(self.Xu, Xstar), lower=True, check_finite=False)
        mu = self.mean.evaluate(Xstar)
        if self.scheme != "FSA":
            mu = mu + Vs.T @ (self.V @ self.alpha)
            Ws = sla.solve_triangular(self.LA, Vs, lower=True, check_finite=False)
            var = np.einsum("ij,ij->j", Ws, Ws)
            if self.scheme != "SoR":
                var = var + self.kernel.diag(Xstar) - np.einsum("ij,ij->j", Vs, Vs)
            return mu, np.maximum(var, 0.0)

        # K~*f = Q*f plus the exact correction within each block
        Ksf = Vs.T @ self.V
        for tidx, idx in zip(self._test_blocks(Xstar, test_blocks), self.blocks):
            if tidx.size:
                Ksf[np.ix_(tidx, idx)] = self.kernel.cov(Xstar[:, tidx], self.X[:, idx])
        mu = mu + Ksf @ self.alpha
        var = self.kernel.diag(Xstar) - np.einsum("ij,ji->i", Ksf, self._solve(Ksf.T))
        return mu, np.maximum(var, 0.0)

    def predict_y(self, Xstar, test_blocks=None):
        """predict_f with sigma^2 added to the variances."""
        mu, var = self.predict_f(Xstar, test_blocks)
        return mu, var + self.noise.variance

    def summary(self):
        lines = [f"GP {self.scheme} object:", f"  Dim = {self.dim}", f"  Number of observations = {self.nobs}",
                 f"  Number of inducing points = {self.Xu.shape[1]}"]
        lines += self._type_lines()
        lines.append(f"  Variance of observation noise = {self.noise.variance:.6g}")
        lines.append(f"  Marginal Log-Likelihood = {self.mll:.6g}")
        return "\n".join(lines)

    def __str__(self):
        return self.summary()


def fit_sparse(scheme, X, Xu, y, mean, kernel, log_noise, blocks=None):
    """Fit one of the sparse schemes; FSA needs blocks (see nearest_inducing_blocks)."""
    return SparseGP(scheme, X, Xu, y, mean, kernel, log_noise, blocks)


def SoR(X, Xu, y, mean, kernel, log_noise):
    """Subset of regressors."""
    return SparseGP("SoR", X, Xu, y, mean, kernel, log_noise)


def DTC(X, Xu, y, mean, kernel, log_noise):
    """Deterministic training conditional."""
    return SparseGP("DTC", X, Xu, y, mean, kernel, log_noise)


def FITC(X, Xu, y, mean, kernel, log_noise):
    """Fully independent training conditional."""
    return SparseGP("FITC", X, Xu, y, mean, kernel, log_noise)


def FSA(X, Xu, y, mean, kernel, log_noise, blocks):
    """Full-scale approximation with a block-diagonal correction over blocks."""
    return SparseGP("FSA", X, Xu, y, mean, kernel, log_noise, blocks)
