import os
import sys

from loguru import logger

from config import DevelopmentConfig, TestingConfig

# Set the environment variable GPKIT_ENV to pick the configuration (development or testing)
environment = os.environ.get("GPKIT_ENV", "development")

_CONFIGS = {
    "development": DevelopmentConfig,
    "testing": TestingConfig,
}


class _ActiveSettings:
    """Attribute proxy onto the configuration class currently installed."""

    def __init__(self, config_class):
        self.config_class = config_class

    def __getattr__(self, name):
        return getattr(self.config_class, name)


settings = _ActiveSettings(_CONFIGS.get(environment, DevelopmentConfig))


def configure(config_class):
    """
    Install a configuration class and re-create the log sink at its level.

    Parameters:
        config_class: One of the classes from config.py (or a subclass).

    Returns:
        The settings proxy, now reading from config_class.
    """
    settings.config_class = config_class
    logger.remove()
    logger.add(sys.stderr, level=config_class.LOG_LEVEL,
               format="{time:HH:mm:ss} | {level: <7} | {name}:{line} - {message}")
    return settings


configure(settings.config_class)

# Import the public API once settings and logging are in place
from gpkit.errors import (ConfigurationError, DataError, GPKitError, InputError,  # noqa: E402
                          NumericalError, ParseError)
from gpkit.kernels import (SE, Const, Fixed, Lin, Masked, Matern, Noise, Periodic,  # noqa: E402
                           Poly, RQ, Kernel)
from gpkit.means import MeanConst, MeanFunction, MeanLin, MeanPoly, MeanZero  # noqa: E402
from gpkit.likelihoods import (BernLik, BinLik, ExpLik, GaussLik, Likelihood,  # noqa: E402
                               PoisLik, StuTLik)
from gpkit.models import (DTC, FITC, FSA, GPE, GPMC, SoR, ElasticGPE, SparseGP,  # noqa: E402
                          fit_sparse, make_gp, mc_predict_y, nearest_inducing_blocks, sample_prior)
from gpkit.inference import (Flat, HMCConfig, Normal, OptimizeOptions, Uniform,  # noqa: E402
                             map_optimize, mcmc, optimize, set_priors)
