import numpy as np


def make_rng(seed=0):
    """Counter-based 64-bit generator; every stochastic entry point builds its own."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(int(seed)))
