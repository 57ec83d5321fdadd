"""
Exact GP regression with Gaussian observation noise.

The fitted state keeps the Cholesky factor L of K + sigma^2 I and the weights
alpha = (K + sigma^2 I)^-1 (y - m(X)), so predictions reuse them. Storage is
preallocated up to a capacity and grows by a stepsize, which lets points be
appended with one triangular solve each instead of a full refactorization.
"""
import numpy as np
import scipy.linalg as sla
from loguru import logger

from gpkit import settings
from gpkit.errors import InputError
from gpkit.kernels.base import as_inputs
from gpkit.models.base import GPBase
from gpkit.utils.linalg import cholesky_append, jittered_cholesky, logdet_from_cholesky
from gpkit.utils.params import ObservationNoise
from gpkit.utils.rng import make_rng

_LOG_2PI = np.log(2.0 * np.pi)


class GPE(GPBase):
    """
    Exact Gaussian process.

    Attributes:
        mean: Mean function.
        kernel: Covariance function.
        noise: Observation noise, stored as log standard deviation.
        L: Lower Cholesky factor of K + sigma^2 I (+ jitter I).
        alpha: Weight vector (K + sigma^2 I)^-1 (y - m(X)).
        mll: Log marginal likelihood at the current parameters.
        jitter: Diagonal jitter the factorization needed.
        capacity: Number of observations storage is allocated for.
        stepsize: Growth of capacity when an append overflows it.
    """

    kind = "GPE"

    def __init__(self, X, y, mean, kernel, log_noise, capacity=None, stepsize=None):
        super().__init__(X, y, mean, kernel)
        self.noise = ObservationNoise(log_noise)
        d, n = self._X.shape
        self.capacity = max(int(capacity or n), n)
        self.stepsize = int(stepsize or settings.ELASTIC_STEPSIZE)
        self._n = n
        self._Xbuf = np.zeros((d, self.capacity))
        self._ybuf = np.zeros(self.capacity)
        self._mbuf = np.zeros(self.capacity)
        self._Lbuf = np.zeros((self.capacity, self.capacity))
        self._Xbuf[:, :n] = self._X
        self._ybuf[:n] = self._y
        del self._X, self._y
        self._refresh()

    @property
    def X(self):
        return self._Xbuf[:, :self._n]

    @property
    def y(self):
        return self._ybuf[:self._n]

    @property
    def nobs(self):
        return self._n

    @property
    def L(self):
        return self._Lbuf[:self._n, :self._n]

    def param_groups(self):
        return [("noise", self.noise), ("mean", self.mean), ("kernel", self.kernel)]

    def _refresh(self):
        n = self._n
        if n == 0:
            self.alpha = np.zeros(0)
            self.jitter = 0.0
            # no observations, no marginal likelihood
            self.mll = None
            return
        X = self.X
        gram = self.kernel.gram(X).add_diagonal(self.noise.variance)
        L = gram.cholesky()
        self.jitter = gram.jitter_applied
        self._Lbuf[:n, :n] = L
        self._mbuf[:n] = self.mean.evaluate(X)
        self._update_weights()
        logger.debug("fitted exact GP: n={} d={} jitter={:.3g} mll={:.6g}", n, self.dim, self.jitter, self.mll)

    def _update_weights(self):
        n = self._n
        L = self.L
        yc = self._ybuf[:n] - self._mbuf[:n]
        self.alpha = sla.cho_solve((L, True), yc, check_finite=False)
        self.mll = float(-0.5 * yc @ self.alpha - 0.5 * logdet_from_cholesky(L) - 0.5 * n * _LOG_2PI)

    def log_marginal(self):
        """Cached log marginal likelihood log N(y; m(X), K + sigma^2 I); None without observations."""
        return self.mll

    def log_likelihood(self):
        if self.mll is None:
            raise InputError("the model has no observations, so its likelihood is undefined")
        return self.mll

    def _grad_log_likelihood_full(self):
        n = self._n
        if n == 0:
            return np.zeros(self.num_params())
        X = self.X
        Kinv = sla.cho_solve((self.L, True), np.eye(n), check_finite=False)
        W = np.outer(self.alpha, self.alpha) - Kinv
        grad_noise = self.noise.variance * np.trace(W)
        grad_mean = self.mean.grad_params(X) @ self.alpha
        grad_kern = 0.5 * np.einsum("ij,pij->p", W, self.kernel.grad_stack(X))
        return np.concatenate([[grad_noise], grad_mean, grad_kern])

    def grad_log_marginal(self, **flags):
        """Gradient of log_marginal over (log_noise, mean, kernel), restricted to the free groups."""
        return self.grad_log_likelihood(**flags)

    def predict_f(self, Xstar, full_cov=False):
        """
        Latent predictive mean and variance (or covariance) at the columns of Xstar.

        Parameters:
            Xstar: (d, m) test inputs.
            full_cov: Return the (m, m) covariance instead of the variances.

        Returns:
            (mean, variance) with variances floored at 0.
        """
        Xstar = self._prepare_test_inputs(Xstar)
        mu = self.mean.evaluate(Xstar)
        if self._n == 0:
            V = np.zeros((0, Xstar.shape[1]))
        else:
            Kfs = self.kernel.cov(self.X, Xstar)
            mu = mu + Kfs.T @ self.alpha
            V = sla.solve_triangular(self.L, Kfs, lower=True, check_finite=False)
        if full_cov:
            S = self.kernel.cov(Xstar) - V.T @ V
            S = 0.5 * (S + S.T)
            d = np.diag_indices_from(S)
            S[d] = np.maximum(S[d], 0.0)
            return mu, S
        return mu, np.maximum(self.kernel.diag(Xstar) - np.einsum("ij,ij->j", V, V), 0.0)

    def predict_y(self, Xstar, full_cov=False):
        """Predictive distribution of new observations: predict_f plus sigma^2 on the diagonal."""
        mu, S = self.predict_f(Xstar, full_cov)
        if full_cov:
            S = S + self.noise.variance * np.eye(S.shape[0])
        else:
            S = S + self.noise.variance
        return mu, S

    def sample_posterior(self, Xstar, count=1, seed=0):
        """
        Draws of the latent function at Xstar from the posterior.

        Returns:
            (count, m) matrix, one draw per row.
        """
        mu, S = self.predict_f(Xstar, full_cov=True)
        return _draw(mu, S, count, seed)

    def append(self, x_new, y_new):
        """
        Add observations, extending the Cholesky factor row by row.

        Parameters:
            x_new: One point as a length-d vector, or a (d, k) batch.
            y_new: Matching response(s).
        """
        Xn = np.asarray(x_new, dtype=float)
        if Xn.ndim <= 1:
            Xn = Xn.reshape(1, -1) if self.dim == 1 else Xn.reshape(-1, 1)
        if Xn.shape[0] != self.dim:
            raise InputError(f"appended points have {Xn.shape[0]} dimensions, the model has {self.dim}")
        yn = np.atleast_1d(np.asarray(y_new, dtype=float)).reshape(-1)
        if yn.size != Xn.shape[1]:
            raise InputError(f"{Xn.shape[1]} appended points but {yn.size} responses")
        if not np.all(np.isfinite(Xn)) or not np.all(np.isfinite(yn)):
            raise InputError("appended points and responses must be finite")

        mn = self.mean.evaluate(Xn)
        for i in range(Xn.shape[1]):
            x = Xn[:, [i]]
            if self._n == self.capacity:
                self._grow()
            n = self._n
            if n > 0:
                cross = self.kernel.cov(self.X, x)[:, 0]
                diag = self.kernel.diag(x)[0] + self.noise.variance + self.jitter
                row, pivot = cholesky_append(self.L, cross, diag)
                self._Lbuf[n, :n] = row
            else:
                pivot = np.sqrt(self.kernel.diag(x)[0] + self.noise.variance + self.jitter)
            self._Lbuf[n, n] = pivot
            self._Xbuf[:, n] = x[:, 0]
            self._ybuf[n] = yn[i]
            self._mbuf[n] = mn[i]
            self._n += 1
        self._update_weights()
        logger.debug("appended {} point(s): n={} capacity={}", Xn.shape[1], self._n, self.capacity)
        return self

    def _grow(self):
        n, new = self._n, self.capacity + self.stepsize
        Xbuf = np.zeros((self.dim, new))
        Xbuf[:, :n] = self._Xbuf[:, :n]
        Lbuf = np.zeros((new, new))
        Lbuf[:n, :n] = self._Lbuf[:n, :n]
        ybuf, mbuf = np.zeros(new), np.zeros(new)
        ybuf[:n], mbuf[:n] = self._ybuf[:n], self._mbuf[:n]
        self._Xbuf, self._Lbuf, self._ybuf, self._mbuf = Xbuf, Lbuf, ybuf, mbuf
        self.capacity = new

    def summary(self):
        lines = ["GP Exact object:", f"  Dim = {self.dim}", f"  Number of observations = {self.nobs}"]
        lines += self._type_lines()
        if self.nobs == 0:
            lines.append("  No observation data")
        else:
            lines.append(f"  Variance of observation noise = {self.noise.variance:.6g}")
            lines.append(f"  Marginal Log-Likelihood = {self.mll:.6g}")
        return "\n".join(lines)

    def __str__(self):
        return self.summary()


def ElasticGPE(dim, mean, kernel, log_noise, capacity=None, stepsize=None):
    """
    An exact GP with no observations yet and storage preallocated for appends.

    Parameters:
        dim: Input dimension.
        capacity: Initial storage (defaults to settings.ELASTIC_CAPACITY).
        stepsize: Storage growth (defaults to settings.ELASTIC_STEPSIZE).
    """
    return GPE(np.zeros((int(dim), 0)), np.zeros(0), mean, kernel, log_noise,
               capacity=capacity or settings.ELASTIC_CAPACITY,
               stepsize=stepsize or settings.ELASTIC_STEPSIZE)


def _draw(mu, S, count, seed):
    L, _ = jittered_cholesky(S, start=settings.MC_JITTER_START, always=True)
    Z = make_rng(seed).standard_normal((L.shape[0], int(count)))
    return (mu[:, None] + L @ Z).T


def sample_prior(mean, kernel, Xstar, count=1, seed=0):
    """
    Draws of m(X*) + L z from the GP prior at the columns of Xstar.

    Returns:
        (count, m) matrix, one draw per row.
    """
    Xstar = as_inputs(Xstar)
    return _draw(mean.evaluate(Xstar), kernel.cov(Xstar), count, seed)
