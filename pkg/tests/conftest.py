import numpy as np
import pytest

from bispinor import (
    DIRAC_COMPLEX,
    MAJORANA_REAL,
    TensorQuintuple,
    build_rep,
)


def random_quintuple(rng, scale=1.0, j0_min=1.5):
    """Mixed random quintuple with future-directed timelike j."""
    j = rng.uniform(-scale, scale, 4)
    j[0] = j0_min + rng.uniform(0.0, 1.0)
    return TensorQuintuple.from_h6(
        rng.uniform(-scale, scale), j, rng.uniform(-scale, scale, 4),
        rng.uniform(-scale, scale, 6), rng.uniform(-scale, scale),
    )


def random_current_quintuple(rng, h_scale=0.5, j0_min=1.8):
    """Current-tensor-only quintuple (m = n = s = 0), strictly timelike j
    (spatial part is bounded by sqrt(3) < j0_min)."""
    j = rng.uniform(-1.0, 1.0, 4)
    j[0] = j0_min + rng.uniform(0.0, 1.0)
    return TensorQuintuple.from_h6(
        0.0, j, np.zeros(4), rng.uniform(-h_scale, h_scale, 6), 0.0,
    )


@pytest.fixture(params=[MAJORANA_REAL, DIRAC_COMPLEX])
def rep(request):
    return build_rep(request.param)


@pytest.fixture
def real_rep():
    return build_rep(MAJORANA_REAL)


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)
