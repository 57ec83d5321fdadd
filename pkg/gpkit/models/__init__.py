from numbers import Real

from gpkit.errors import ConfigurationError
from gpkit.likelihoods.base import Likelihood
from gpkit.models.base import GPBase
from gpkit.models.exact import GPE, ElasticGPE, sample_prior
from gpkit.models.mc import GPMC, LatentVector, mc_predict_y
from gpkit.models.sparse import (DTC, FITC, FSA, SCHEMES, SoR, SparseGP, fit_sparse,
                                 nearest_inducing_blocks)


def make_gp(X, y, mean, kernel, noise_or_lik=None):
    """
    Build the right GP for the observation model.

    Parameters:
        X: (d, n) inputs.
        y: Responses.
        mean: Mean function.
        kernel: Kernel.
        noise_or_lik: A number (log noise standard deviation) for exact
            regression, or a Likelihood for the Monte Carlo GP.

    Returns:
        GPE or GPMC.
    """
    if isinstance(noise_or_lik, Likelihood):
        return GPMC(X, y, mean, kernel, noise_or_lik)
    if isinstance(noise_or_lik, Real) and not isinstance(noise_or_lik, bool):
        return GPE(X, y, mean, kernel, float(noise_or_lik))
    raise ConfigurationError(f"expected a log noise value or a likelihood, got {noise_or_lik!r}")


__all__ = ["GPBase", "GPE", "ElasticGPE", "sample_prior", "GPMC", "LatentVector", "mc_predict_y",
           "SparseGP", "SoR", "DTC", "FITC", "FSA", "SCHEMES", "fit_sparse", "nearest_inducing_blocks",
           "make_gp"]
