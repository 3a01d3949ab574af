import numpy as np
import pytest


def random_rows(rng, n=None, d=None, sigma="abc"):
    """n uniform-random strings of length d over sigma."""
    n = n if n is not None else int(rng.integers(2, 9))
    d = d if d is not None else int(rng.integers(1, 7))
    return [
        "".join(sigma[int(rng.integers(0, len(sigma)))] for _ in range(d))
        for _ in range(n)
    ]


@pytest.fixture
def rng():
    # One fixed master seed for the whole suite keeps failures reproducible.
    return np.random.default_rng(20260816)
