from gpkit.likelihoods.base import Likelihood
from gpkit.likelihoods.kinds import BernLik, BinLik, ExpLik, GaussLik, PoisLik, StuTLik
from gpkit.likelihoods.quadrature import gauss_hermite, gaussian_expectation

__all__ = ["Likelihood", "BernLik", "BinLik", "ExpLik", "GaussLik", "PoisLik", "StuTLik",
           "gauss_hermite", "gaussian_expectation"]
