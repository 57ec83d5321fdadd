"""
Timing workloads behind the bench command.

Two suites: the log-likelihood-and-gradient update for a list of kernels on
simulated standard-normal data with ten covariates, and one fit of the exact
GP against each sparse scheme on the |x - 5| cos(2x) regression problem.
"""
import time
import tracemalloc

import numpy as np
from loguru import logger

from gpkit.means import MeanConst, MeanZero
from gpkit.models import GPE, SCHEMES, fit_sparse, nearest_inducing_blocks
from gpkit.utils.parser import kernel_from_text
from gpkit.utils.rng import make_rng

# Quantile levels of the 12 inducing points used by the sparse suite
SPARSE_LEVELS = np.array([0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6, 0.65, 0.7, 0.98])
SPARSE_NOISE_SD = 10.0
SPARSE_KERNEL = "SE(0.0,0.0)"


def simulate_benchmark(n, dim=10, seed=0):
    """Standard-normal inputs (dim, n) and responses (n,)."""
    rng = make_rng(seed)
    return rng.standard_normal((dim, n)), rng.standard_normal(n)


def simulate_sparse(n, seed=0):
    """
    Inputs from 10 * Beta(7, 7) and responses |x - 5| cos(2x) plus N(0, 10^2) noise.

    Returns:
        (X, y) with X of shape (1, n).
    """
    rng = make_rng(seed)
    x = 10.0 * rng.beta(7.0, 7.0, n)
    y = np.abs(x - 5.0) * np.cos(2.0 * x) + rng.normal(0.0, SPARSE_NOISE_SD, n)
    return x[None, :], y


def quantile_inducing(X, m):
    """
    m inducing inputs at per-dimension quantiles of X.

    Twelve points use the sparse suite's levels; other counts use evenly
    spaced interior levels.
    """
    levels = SPARSE_LEVELS if m == SPARSE_LEVELS.size else np.linspace(0.0, 1.0, m + 2)[1:-1]
    return np.quantile(X, levels, axis=1).T


def min_seconds(func, runs):
    """Shortest wall time of runs calls to func."""
    best = np.inf
    for _ in range(runs):
        start = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - start)
    return best


def peak_bytes(func):
    """Peak memory traced while func runs once."""
    tracemalloc.start()
    try:
        func()
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    return peak


def bench_kernels(expressions, n=3000, runs=10, seed=0, log_noise=0.0):
    """
    Time the log-likelihood-and-gradient update for each kernel expression.

    Parameters:
        expressions: Kernel expressions to time.
        n: Number of simulated observations.
        runs: Timed repetitions; the minimum is reported.

    Returns:
        List of rows {kernel, min_ms, allocs}; allocs is the peak number of
        bytes allocated during one update.
    """
    X, y = simulate_benchmark(n, seed=seed)
    rows = []
    for text in expressions:
        gp = GPE(X, y, MeanZero(), kernel_from_text(text), log_noise)
        params = gp.get_params()

        def update():
            gp.set_params(params)
            gp.grad_log_likelihood()

        seconds = min_seconds(update, runs)
        rows.append({"kernel": text, "min_ms": 1e3 * seconds, "allocs": peak_bytes(update)})
        logger.info("{}: {:.3f} ms", text, 1e3 * seconds)
    return rows


def sparse_suite(n=5000, m=12, seed=0, runs=1):
    """
    Fit the exact GP and every sparse scheme to the same simulated problem.

    Returns:
        List of rows {method, fit_ms, nbytes}, exact first.
    """
    X, y = simulate_sparse(n, seed)
    Xu = quantile_inducing(X, m)
    blocks = nearest_inducing_blocks(X, Xu)
    kernel = kernel_from_text(SPARSE_KERNEL)
    log_noise = float(np.log(SPARSE_NOISE_SD))
    mean = MeanConst(float(np.mean(y)))

    fits = {"Exact": lambda: GPE(X, y, mean, kernel, log_noise)}
    for scheme in SCHEMES:
        fits[scheme] = (lambda s: lambda: fit_sparse(s, X, Xu, y, mean, kernel, log_noise, blocks))(scheme)

    rows = []
    for method, fit in fits.items():
        seconds = min_seconds(fit, runs)
        gp = fit()
        nbytes = gp.L.nbytes if method == "Exact" else gp.nbytes
        rows.append({"method": method, "fit_ms": 1e3 * seconds, "nbytes": int(nbytes)})
        logger.info("{} fit: {:.1f} ms, {} bytes", method, 1e3 * seconds, nbytes)
    return rows
