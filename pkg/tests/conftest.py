import numpy as np
import pytest

from affinecap.quadrature import build_rule, calibrate_rule, symmetrize_rule


@pytest.fixture(scope="session")
def circle_rule():
    return calibrate_rule(build_rule(2, "circle", 1024))


@pytest.fixture(scope="session")
def fib_rule():
    return calibrate_rule(build_rule(3, "fibonacci", 10_000))


@pytest.fixture(scope="session")
def mirrored_rule():
    """Antipodally symmetric n=3 rule used by symmetry-sensitive checks."""
    return symmetrize_rule(calibrate_rule(build_rule(3, "fibonacci", 2000)))


@pytest.fixture(scope="session")
def mc4_rule():
    return calibrate_rule(build_rule(4, "monte-carlo", 20_000, seed=11))


def random_unit(rng, n):
    v = rng.standard_normal(n)
    return v / np.linalg.norm(v)
