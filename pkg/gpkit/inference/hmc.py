"""
Hamiltonian Monte Carlo with an identity mass matrix.

Each iteration draws a fresh momentum and a number of leapfrog steps uniformly
from [Lmin, Lmax], integrates with step epsilon and accepts with the usual
Metropolis probability. With Lmin = Lmax = 1 this is MALA.
"""
from dataclasses import dataclass, field

import numpy as np
from loguru import logger

from gpkit import settings
from gpkit.errors import ConfigurationError, InputError, NumericalError
from gpkit.utils.rng import make_rng


@dataclass
class HMCConfig:
    """
    Sampler settings; unset fields take the active configuration's defaults.

    Attributes:
        epsilon: Leapfrog step size.
        Lmin, Lmax: Bounds of the uniformly drawn number of leapfrog steps.
        n_iter: Total iterations, burn-in included.
        burn: Iterations discarded from the start of the chain.
        thin: Keep every thin-th iteration after burn-in.
        seed: Seed of the Philox generator.
    """

    epsilon: float = field(default_factory=lambda: settings.HMC_EPSILON)
    Lmin: int = field(default_factory=lambda: settings.HMC_LMIN)
    Lmax: int = field(default_factory=lambda: settings.HMC_LMAX)
    n_iter: int = field(default_factory=lambda: settings.HMC_N_ITER)
    burn: int = field(default_factory=lambda: settings.HMC_BURN)
    thin: int = field(default_factory=lambda: settings.HMC_THIN)
    seed: int = 0

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ConfigurationError(f"epsilon must be positive, got {self.epsilon}")
        if not 1 <= self.Lmin <= self.Lmax:
            raise ConfigurationError(f"need 1 <= Lmin <= Lmax, got Lmin={self.Lmin}, Lmax={self.Lmax}")
        if self.thin < 1:
            raise ConfigurationError(f"thin must be at least 1, got {self.thin}")
        if not 0 <= self.burn < self.n_iter:
            raise ConfigurationError(f"need 0 <= burn < n_iter, got burn={self.burn}, n_iter={self.n_iter}")

    @property
    def kept(self):
        """Number of samples the chain keeps: ceil((n_iter - burn) / thin)."""
        return -(-(self.n_iter - self.burn) // self.thin)


def hmc_sample(log_density, x0, config, rng=None):
    """
    Run the sampler on an arbitrary differentiable log density.

    Parameters:
        log_density: Callable x -> (log p(x), gradient). Non-finite values mark
            a state outside the support; such proposals are rejected.
        x0: Starting state.
        config: HMCConfig.
        rng: Generator (defaults to one seeded with config.seed).

    Returns:
        (samples, acceptance_rate) with samples of shape (len(x0), kept).
    """
    rng = make_rng(config.seed) if rng is None else rng
    eps = config.epsilon
    x = np.array(x0, dtype=float)
    logp, grad = log_density(x)
    if not np.isfinite(logp) or not np.all(np.isfinite(grad)):
        raise InputError("the target density is not finite at the starting state")

    kept = np.empty((x.size, config.kept))
    accepted = 0
    k = 0
    for it in range(config.n_iter):
        p0 = rng.standard_normal(x.size)
        steps = int(rng.integers(config.Lmin, config.Lmax + 1))
        u = rng.uniform()

        xn, p = x.copy(), p0 + 0.5 * eps * grad
        ok = True
        for step in range(steps):
            xn += eps * p
            lp, g = log_density(xn)
            if not np.isfinite(lp) or not np.all(np.isfinite(g)):
                ok = False
                break
            p += (eps if step < steps - 1 else 0.5 * eps) * g

        if ok:
            log_ratio = lp - logp - 0.5 * p @ p + 0.5 * p0 @ p0
            if np.log(u) < log_ratio:
                x, logp, grad = xn, lp, g
                accepted += 1

        if it >= config.burn and (it - config.burn) % config.thin == 0:
            kept[:, k] = x
            k += 1

    return kept, accepted / config.n_iter


def mcmc(gp, config=None, noise=True, domean=True, kern=True, lik=True, **overrides):
    """
    Sample a GP's parameters with HMC.

    For an exact or sparse GP the state is the hyperparameter vector and the
    target is the marginal likelihood times the priors; for a Monte Carlo GP
    the state is (v, theta). Frozen groups stay at their entry values. The GP
    is returned to its entry state afterwards.

    Parameters:
        gp: GPE, SparseGP or GPMC.
        config: HMCConfig; keyword overrides (epsilon, Lmin, ...) build one.
        noise, domean, kern, lik: Which parameter groups are sampled.

    Returns:
        (num_params, kept) matrix of full parameter vectors, one column per
        kept sample, in the GP's get_params order.
    """
    if config is None:
        config = HMCConfig(**overrides)
    elif overrides:
        raise ConfigurationError("pass either an HMCConfig or keyword overrides, not both")
    flags = dict(noise=noise, domean=domean, kern=kern, lik=lik)
    if gp.num_params(**flags) == 0:
        raise ConfigurationError("no free parameters to sample")

    start = gp.get_params()
    mask = gp._mask(flags)

    def log_density(x):
        try:
            gp.set_params(x, **flags)
            return gp.log_target(), gp.grad_log_target(**flags)
        except (NumericalError, ConfigurationError):
            # proposals the model refuses are rejected like numerical failures
            return -np.inf, np.full(x.size, np.nan)

    logger.info("HMC: {} iterations, epsilon={}, L in [{}, {}], burn={}, thin={}",
                config.n_iter, config.epsilon, config.Lmin, config.Lmax, config.burn, config.thin)
    try:
        free, rate = hmc_sample(log_density, start[mask], config)
    finally:
        gp.set_params(start)
    samples = np.repeat(start[:, None], free.shape[1], axis=1)
    samples[mask] = free
    logger.info("HMC acceptance rate {:.3f}", rate)
    return samples
