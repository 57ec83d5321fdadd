from gpkit.inference.hmc import HMCConfig, hmc_sample, mcmc
from gpkit.inference.optimize import OptimizeOptions, OptimResult, map_optimize, minimize_objective, optimize
from gpkit.inference.priors import Flat, Normal, Prior, PriorSet, Uniform, set_priors

__all__ = ["HMCConfig", "hmc_sample", "mcmc", "OptimizeOptions", "OptimResult", "map_optimize",
           "minimize_objective", "optimize", "Flat", "Normal", "Prior", "PriorSet", "Uniform", "set_priors"]
