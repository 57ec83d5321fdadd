"""
Command-line front end.

    gpkit fit     --data d.csv --kernel "SE(0.0,0.0)" --out results/
    gpkit predict --data d.csv --grid 0:10:200 --out results/
    gpkit mcmc    --data d.csv --n-iter 10000 --burn 1000 --thin 10
    gpkit sparse  --data d.csv --scheme fitc --inducing 12
    gpkit bench   --n 3000

Every command reads an optional key = value file (--config); flags given on
the command line win over it. Failures print one line
"error[<category>]: <message>" to stderr and exit with the category's code.
"""
import functools
import os
import sys

import click
import numpy as np
from loguru import logger

from gpkit.api.bench import bench_kernels, quantile_inducing, sparse_suite
from gpkit.errors import ConfigurationError, GPKitError
from gpkit.inference import HMCConfig, OptimizeOptions, mcmc, optimize
from gpkit.models import fit_sparse, make_gp, nearest_inducing_blocks
from gpkit.schemas.result_schema import FitResultSchema, fit_result, key_value_text
from gpkit.schemas.run_config_schema import load_run_config, read_config_file
from gpkit.utils.data import load_csv, write_csv
from gpkit.utils.parser import build_kernel, build_likelihood, build_mean, parse_kernel, parse_likelihood, parse_mean

# Two-sided 95% normal quantile for the prediction ribbon
Z95 = 1.95996

fit_result_schema = FitResultSchema()


def guarded(func):
    """Turn library errors into the one-line stderr report and exit code."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except GPKitError as e:
            code, line = e.exit_code, e.one_line()
        except Exception as e:  # noqa: BLE001
            logger.opt(exception=e).debug("unexpected failure")
            code, line = 1, f"error[internal]: {type(e).__name__}: {' '.join(str(e).split())}"
        click.echo(line, err=True)
        sys.exit(code)
    return wrapper


def common_options(func):
    """Options every command shares."""
    options = [
        click.option("--config", "config_path", type=click.Path(dir_okay=False), help="key = value run configuration"),
        click.option("--data", help="CSV file with one observation per row"),
        click.option("--x-cols", help="input columns, names or 1-based indices, comma separated"),
        click.option("--y-col", help="response column (default: last)"),
        click.option("--kernel", help='kernel expression, e.g. "SE(0.0,0.0)"'),
        click.option("--mean", help='mean expression, e.g. "MeanConst(0.0)"'),
        click.option("--lik", help='likelihood, e.g. "BernLik()"; omit for Gaussian noise'),
        click.option("--log-noise", type=float, help="log standard deviation of the observation noise"),
        click.option("--optimize/--no-optimize", default=None, help="fit hyperparameters first"),
        click.option("--freeze", help="groups to hold fixed: noise, mean, kernel, lik"),
        click.option("--max-iterations", type=int, help="optimizer iteration cap"),
        click.option("--seed", type=int, help="random seed (default 0)"),
        click.option("--out", type=click.Path(file_okay=False), help="output directory"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def prediction_options(func):
    func = click.option("--latent", is_flag=True, default=None, help="predict f instead of y")(func)
    return click.option("--grid", help="start:stop:count or a CSV of test inputs")(func)


def resolve_config(config_path, **flags):
    file_values = read_config_file(config_path) if config_path else {}
    return load_run_config(file_values, **flags)


def _output_path(cfg, name):
    os.makedirs(cfg.out, exist_ok=True)
    return os.path.join(cfg.out, name)


class Problem:
    """Parsed expressions and loaded data for one run."""

    def __init__(self, cfg):
        # Expressions are checked before any data is read
        self.kernel_tree = parse_kernel(cfg.kernel)
        self.mean_tree = parse_mean(cfg.mean)
        self.lik_tree = parse_likelihood(cfg.lik) if cfg.lik else None
        if not cfg.data:
            raise ConfigurationError("no data file given (--data)")
        self.X, self.y = load_csv(cfg.data, cfg.x_cols, cfg.y_col)
        self.cfg = cfg

    def model(self):
        noise_or_lik = build_likelihood(self.lik_tree) if self.lik_tree else self.cfg.log_noise
        return make_gp(self.X, self.y, build_mean(self.mean_tree), build_kernel(self.kernel_tree), noise_or_lik)

    def sparse_model(self):
        cfg = self.cfg
        Xu = self.inducing_points()
        blocks = self.blocks(Xu) if cfg.scheme == "FSA" else None
        return fit_sparse(cfg.scheme, self.X, Xu, self.y, build_mean(self.mean_tree),
                          build_kernel(self.kernel_tree), cfg.log_noise, blocks)

    def inducing_points(self):
        source = self.cfg.inducing or str(self.cfg.sparse_m)
        if source.isdigit():
            m = int(source)
            if not 1 <= m <= self.X.shape[1]:
                raise ConfigurationError(f"--inducing {m}: need between 1 and {self.X.shape[1]} points")
            return quantile_inducing(self.X, m)
        Xu, _ = load_csv(source, with_y=False)
        return Xu

    def blocks(self, Xu):
        source = self.cfg.blocks
        if source == "nearest":
            return nearest_inducing_blocks(self.X, Xu)
        labels, _ = load_csv(source, x_cols="1", with_y=False)
        labels = labels[0]
        return [np.flatnonzero(labels == b) for b in np.unique(labels)]

    def grid(self):
        source = self.cfg.grid
        if source is None:
            return self.X
        parts = source.split(":")
        if len(parts) == 3 and not os.path.exists(source):
            try:
                start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            except ValueError:
                raise ConfigurationError(f"--grid {source!r}: expected start:stop:count")
            if self.X.shape[0] != 1:
                raise ConfigurationError("a start:stop:count grid needs one input column; pass a CSV instead")
            if count < 1:
                raise ConfigurationError("--grid count must be positive")
            return np.linspace(start, stop, count)[None, :]
        Xstar, _ = load_csv(source, with_y=False)
        return Xstar


def run_optimizer(gp, cfg):
    if not cfg.optimize:
        return None
    overrides = {} if cfg.max_iterations is None else {"max_iterations": cfg.max_iterations}
    return optimize(gp, OptimizeOptions(**cfg.flags, **overrides))


def write_predictions(gp, Xstar, cfg):
    """Write the ribbon table (x..., mean, variance, lower95, upper95)."""
    mean, var = gp.predict_f(Xstar) if cfg.latent else gp.predict_y(Xstar)
    sd = np.sqrt(np.maximum(var, 0.0))
    names = ["x"] if Xstar.shape[0] == 1 else [f"x{i + 1}" for i in range(Xstar.shape[0])]
    columns = {name: row for name, row in zip(names, Xstar)}
    columns.update(mean=mean, variance=var, lower95=mean - Z95 * sd, upper95=mean + Z95 * sd)
    return write_csv(_output_path(cfg, "predictions.csv"), columns)


def write_fit(gp, cfg, optimization):
    dumped = fit_result_schema.dump(fit_result(gp, optimization))
    with open(_output_path(cfg, "params.txt"), "w", encoding="utf-8") as handle:
        handle.write(key_value_text(dumped))
    with open(_output_path(cfg, "summary.txt"), "w", encoding="utf-8") as handle:
        handle.write(gp.summary() + "\n")
    logger.info("wrote fit results to {}", cfg.out)


class GuardedGroup(click.Group):
    """Command group whose usage errors get the same one-line report as library errors."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            return super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.ClickException as e:
            click.echo(f"error[config]: {' '.join(e.format_message().split())}", err=True)
            sys.exit(2)
        except click.Abort:
            click.echo("error[internal]: aborted", err=True)
            sys.exit(1)


@click.group(cls=GuardedGroup)
def cli():
    """Gaussian process regression, classification and sparse approximations."""


@cli.command()
@common_options
@guarded
def fit(config_path, **flags):
    """Fit a GP and write params.txt and summary.txt."""
    cfg = resolve_config(config_path, **flags)
    problem = Problem(cfg)
    gp = problem.model()
    optimization = run_optimizer(gp, cfg)
    write_fit(gp, cfg, optimization)
    click.echo(gp.summary())


@cli.command()
@common_options
@prediction_options
@guarded
def predict(config_path, **flags):
    """Fit a GP and write predictions.csv over a grid."""
    cfg = resolve_config(config_path, **flags)
    problem = Problem(cfg)
    Xstar = problem.grid()
    gp = problem.model()
    run_optimizer(gp, cfg)
    click.echo(write_predictions(gp, Xstar, cfg))


@cli.command(name="mcmc")
@common_options
@click.option("--epsilon", type=float, help="leapfrog step size")
@click.option("--lmin", type=int, help="fewest leapfrog steps")
@click.option("--lmax", type=int, help="most leapfrog steps")
@click.option("--n-iter", type=int, help="iterations including burn-in")
@click.option("--burn", type=int, help="iterations to discard")
@click.option("--thin", type=int, help="keep every thin-th sample")
@guarded
def mcmc_command(config_path, **flags):
    """Sample GP parameters with HMC and write chain.csv."""
    cfg = resolve_config(config_path, **flags)
    problem = Problem(cfg)
    gp = problem.model()
    run_optimizer(gp, cfg)
    config = HMCConfig(seed=cfg.seed, **cfg.hmc_overrides)
    samples = mcmc(gp, config, **cfg.flags)
    columns = dict(zip(gp.param_labels(), samples))
    click.echo(write_csv(_output_path(cfg, "chain.csv"), columns))


@cli.command()
@common_options
@prediction_options
@click.option("--scheme", help="sor, dtc, fitc or fsa")
@click.option("--inducing", help="number of quantile inducing points or a CSV of inducing inputs")
@click.option("--blocks", help='"nearest" or a CSV with one block label per observation (FSA)')
@guarded
def sparse(config_path, **flags):
    """Fit a sparse approximation and write predictions.csv."""
    cfg = resolve_config(config_path, **flags)
    if cfg.lik:
        raise ConfigurationError("sparse approximations need Gaussian noise; drop --lik")
    problem = Problem(cfg)
    Xstar = problem.grid()
    gp = problem.sparse_model()
    run_optimizer(gp, cfg)
    write_fit(gp, cfg, None)
    click.echo(write_predictions(gp, Xstar, cfg))


@cli.command()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="key = value run configuration")
@click.option("--kernels", "bench_kernels", help="kernel expressions separated by ';'")
@click.option("--n", "bench_n", type=int, help="simulated observations (default 3000)")
@click.option("--runs", "bench_runs", type=int, help="timed repetitions (default 10)")
@click.option("--sparse-n", type=int, help="observations in the sparse suite (default 5000)")
@click.option("--sparse-m", type=int, help="inducing points in the sparse suite (default 12)")
@click.option("--skip-sparse", is_flag=True, help="time the kernels only")
@click.option("--seed", type=int, help="random seed (default 0)")
@click.option("--out", type=click.Path(file_okay=False), help="output directory")
@guarded
def bench(config_path, skip_sparse, **flags):
    """Time likelihood updates per kernel and the sparse fits; write bench.csv."""
    cfg = resolve_config(config_path, **flags)
    for text in cfg.bench_kernels:
        parse_kernel(text)
    rows = bench_kernels(cfg.bench_kernels, cfg.bench_n, cfg.bench_runs, cfg.seed)
    write_csv(_output_path(cfg, "bench.csv"), {key: [row[key] for row in rows] for key in ("kernel", "min_ms", "allocs")})
    if not skip_sparse:
        rows = sparse_suite(cfg.sparse_n, cfg.sparse_m, cfg.seed)
        write_csv(_output_path(cfg, "sparse_bench.csv"),
                  {key: [row[key] for row in rows] for key in ("method", "fit_ms", "nbytes")})
    click.echo(cfg.out)
