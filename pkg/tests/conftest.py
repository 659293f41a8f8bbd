import numpy as np
import pytest

from bladegauge.fields import MINKOWSKI4


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def points4(rng):
    """A handful of generic points in the 4d box [-0.6, 0.6]^4."""
    return [rng.uniform(-0.6, 0.6, 4) for _ in range(5)]


@pytest.fixture
def st4():
    return MINKOWSKI4
