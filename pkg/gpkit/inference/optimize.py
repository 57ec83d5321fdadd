"""
Type-II maximum likelihood and MAP estimation of GP hyperparameters with L-BFGS.
"""
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize as so
from loguru import logger

from gpkit import settings
from gpkit.errors import ConfigurationError, InputError, NumericalError


@dataclass
class OptimizeOptions:
    """
    Which parameter groups are free and how long the solver runs.

    Attributes:
        noise, domean, kern, lik: Group flags; at least one must select a
            non-empty group.
        max_iterations: Iteration cap (default from settings).
        gtol: Convergence threshold on the largest gradient component.
        bounds: Optional (lower, upper) pair per free parameter; None entries
            are unbounded. Used by map_optimize.
    """

    noise: bool = True
    domean: bool = True
    kern: bool = True
    lik: bool = True
    max_iterations: int = field(default_factory=lambda: settings.LBFGS_MAX_ITERATIONS)
    gtol: float = field(default_factory=lambda: settings.LBFGS_GTOL)
    bounds: list = None

    @property
    def flags(self):
        return dict(noise=self.noise, domean=self.domean, kern=self.kern, lik=self.lik)


@dataclass
class OptimResult:
    """Outcome of one optimizer run, in minimization terms."""

    initial: np.ndarray
    minimizer: np.ndarray
    minimum: float
    iterations: int
    function_calls: int
    converged: bool
    gradient_norm: float
    message: str = ""

    def report(self):
        fmt = lambda v: "[" + ", ".join(f"{x:.6g}" for x in v) + "]"  # noqa: E731
        return "\n".join([
            "Results of Optimization Algorithm",
            " * Algorithm: L-BFGS",
            f" * Starting Point: {fmt(self.initial)}",
            f" * Minimizer: {fmt(self.minimizer)}",
            f" * Minimum: {self.minimum:.6g}",
            f" * Iterations: {self.iterations}",
            f" * Convergence: {str(self.converged).lower()}",
            f"   * |g(x)| = {self.gradient_norm:.3g}",
            f"   * {self.message}",
            f" * Objective Calls: {self.function_calls}",
        ])


def minimize_objective(objective, x0, max_iterations=None, gtol=None, bounds=None):
    """
    Minimize a smooth function with L-BFGS-B.

    Parameters:
        objective: Callable x -> (value, gradient).
        x0: Starting point; clipped into the bounds when they are given.
        max_iterations: Iteration cap.
        gtol: Stop once the largest projected gradient component is below this.
        bounds: Optional sequence of (lower, upper) pairs.

    Returns:
        OptimResult. A line-search failure returns the best point found with
        converged=False.
    """
    max_iterations = settings.LBFGS_MAX_ITERATIONS if max_iterations is None else max_iterations
    gtol = settings.LBFGS_GTOL if gtol is None else gtol
    x0 = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    if bounds is not None:
        bounds = [(None, None) if b is None else b for b in bounds]
        if len(bounds) != x0.size:
            raise ConfigurationError(f"{len(bounds)} bounds for {x0.size} parameters")
        lower = np.array([-np.inf if b[0] is None else b[0] for b in bounds], dtype=float)
        upper = np.array([np.inf if b[1] is None else b[1] for b in bounds], dtype=float)
        if np.any(lower > upper):
            raise ConfigurationError("lower bound above upper bound")
        x0 = np.clip(x0, lower, upper)

    f0, g0 = objective(x0)
    if not np.isfinite(f0) or not np.all(np.isfinite(g0)):
        raise InputError("objective is not finite at the starting point")

    res = so.minimize(objective, x0, jac=True, method="L-BFGS-B", bounds=bounds,
                      options={"maxcor": settings.LBFGS_MEMORY, "maxiter": max_iterations,
                               "gtol": gtol, "ftol": 1e-15})
    value, grad = objective(res.x)
    return OptimResult(initial=x0, minimizer=np.array(res.x), minimum=float(value), iterations=int(res.nit),
                       function_calls=int(res.nfev), converged=bool(res.success),
                       gradient_norm=float(np.linalg.norm(grad)), message=str(res.message))


def _run(gp, options, with_prior):
    flags = options.flags
    if gp.num_params(**flags) == 0:
        raise ConfigurationError("no free parameters to optimize")

    def objective(x):
        try:
            gp.set_params(x, **flags)
        except NumericalError:
            return np.inf, np.zeros_like(x)
        if with_prior:
            return -gp.log_target(), -gp.grad_log_target(**flags)
        return -gp.log_likelihood(), -gp.grad_log_likelihood(**flags)

    result = minimize_objective(objective, gp.get_params(**flags), options.max_iterations, options.gtol,
                                options.bounds if with_prior else None)
    # leave the model at the minimizer even if the last evaluation was elsewhere
    gp.set_params(result.minimizer, **flags)
    logger.info("{}", result.report())
    return result


def optimize(gp, options=None, **flags):
    """
    Maximize the (marginal) likelihood over the free parameter groups.

    Parameters:
        gp: GPE or SparseGP (a GPMC maximizes its joint density of y and v).
        options: OptimizeOptions; keyword flags (noise=False, ...) build one.

    Returns:
        OptimResult; the GP is left at the minimizer of the negated objective.
    """
    options = options or OptimizeOptions(**flags)
    return _run(gp, options, with_prior=False)


def map_optimize(gp, options=None, **flags):
    """
    Maximize likelihood times prior, with optional box bounds on the free parameters.

    Parameters:
        gp: GPE, SparseGP or GPMC.
        options: OptimizeOptions, bounds included.

    Returns:
        OptimResult for the negated log posterior.
    """
    options = options or OptimizeOptions(**flags)
    return _run(gp, options, with_prior=True)
