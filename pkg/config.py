
# Base configuration class with shared numerical defaults.
# Config class containing common configuration options
class Config:
    """
    Base configuration class with shared configurations.

    Every numerical default the library falls back to lives here so a run can
    be reproduced from the configuration class alone.
    """
    # Jitter added to K + sigma^2 I when the first Cholesky attempt fails,
    # as a fraction of the mean diagonal; doubled until the cap is reached.
    JITTER_START = 1e-10
    JITTER_CAP = 1e-4

    # Latent-variable models have no sigma^2 I term, so jitter is always added.
    MC_JITTER_START = 1e-8

    # Gauss-Hermite order used for predictive moments of non-Gaussian likelihoods
    QUAD_ORDER = 20

    # Hamiltonian Monte Carlo defaults
    HMC_EPSILON = 0.01
    HMC_LMIN = 5
    HMC_LMAX = 15
    HMC_N_ITER = 1000
    HMC_BURN = 0
    HMC_THIN = 1

    # Quasi-Newton optimizer defaults
    LBFGS_MEMORY = 10
    LBFGS_MAX_ITERATIONS = 200
    LBFGS_GTOL = 1e-8

    # Block size of the forward-mode Cholesky derivative
    CHOL_BLOCK_SIZE = 64

    # Elastic exact GP storage
    ELASTIC_CAPACITY = 3000
    ELASTIC_STEPSIZE = 1000

    LOG_LEVEL = "INFO"

# DevelopmentConfig inherits from Config, logging progress messages
class DevelopmentConfig(Config):
    """
    Configuration class for development environment.

    Inherits from Config and logs informational messages.
    """

    LOG_LEVEL = "INFO"

# TestingConfig inherits from Config, keeping test output quiet
class TestingConfig(Config):
    """
    Configuration class for testing environment.

    Inherits from Config and only logs warnings and errors.
    """

    LOG_LEVEL = "WARNING"

    # Set TESTING to True for testing environment
    TESTING = True
