import numpy as np
import pytest

from hierq import FamilySpec, JointDistribution, run_sweep


@pytest.fixture(scope="session")
def ghz_table():
    return run_sweep(FamilySpec("ghz"))


@pytest.fixture(scope="session")
def w_table():
    return run_sweep(FamilySpec("w"))


@pytest.fixture
def random_joints():
    """Factory for seeded Dirichlet draws over three binary variables."""

    def make(count, seed, zero_cells=0):
        rng = np.random.default_rng(seed)
        out = []
        for i in range(count):
            probs = rng.dirichlet(np.ones(8))
            if i < zero_cells:
                probs[rng.integers(0, 8)] = 0.0
                probs = probs / probs.sum()
            out.append(JointDistribution((2, 2, 2), probs))
        return out

    return make
