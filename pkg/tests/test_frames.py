import numpy as np
import pytest

from bispinor import (
    BadSignature,
    InputError,
    LorentzTransform,
    NotLorentz,
    TensorQuintuple,
    WorldMetric,
    apply_lorentz,
    local_to_world,
    quintuple_difference,
    random_lorentz,
    tetrad_from_metric,
    world_to_local,
)
from bispinor.clifford import ETA
from bispinor.frames import WORLD, boost, rotation

from conftest import random_quintuple


def random_metric(rng):
    lam = rng.normal(size=(4, 4)) + 0.5 * np.eye(4)
    while abs(np.linalg.det(lam)) < 0.1:
        lam = rng.normal(size=(4, 4)) + 0.5 * np.eye(4)
    return WorldMetric(lam @ ETA @ lam.T)


def test_metric_signature_rejected():
    with pytest.raises(BadSignature):
        WorldMetric(np.eye(4))


def test_tetrad_reproduces_metric(rng):
    for _ in range(50):
        g = random_metric(rng)
        tet = tetrad_from_metric(g)
        H = tet.H_frame
        assert np.abs(H @ ETA @ H.T - g.g).max() < 1e-10
        assert np.abs(tet.inverse @ H - np.eye(4)).max() < 1e-10


def test_world_local_roundtrip(rng):
    for _ in range(20):
        g = random_metric(rng)
        tet = tetrad_from_metric(g)
        q = random_quintuple(rng)
        qw = local_to_world(q, tet)
        assert qw.frame == WORLD
        back = world_to_local(qw, tet)
        assert quintuple_difference(q, back) < 1e-10


def test_current_norm_invariant_under_tetrad(rng):
    for _ in range(20):
        g = random_metric(rng)
        tet = tetrad_from_metric(g)
        q = random_quintuple(rng)
        qw = local_to_world(q, tet)
        n_local = q.j @ ETA @ q.j
        n_world = qw.j @ g.g @ qw.j
        assert abs(n_local - n_world) < 1e-10 * max(1.0, abs(n_local))


def test_lorentz_validation():
    with pytest.raises(NotLorentz):
        LorentzTransform(np.eye(4) * 2.0)


def test_lorentz_preserves_eta(rng):
    for i in range(50):
        lt = random_lorentz(seed=i)
        assert np.abs(lt.w.T @ ETA @ lt.w - ETA).max() < 1e-10


def test_apply_lorentz_preserves_invariants(rng):
    for i in range(30):
        q = random_quintuple(rng)
        lt = random_lorentz(seed=i)
        qp = apply_lorentz(q, lt)
        # scalar invariants of each tensor
        assert abs(qp.m - q.m) < 1e-12
        assert abs(qp.n - q.n) < 1e-12
        assert abs(qp.j @ ETA @ qp.j - q.j @ ETA @ q.j) < 1e-9
        assert abs(qp.s @ ETA @ qp.s - q.s @ ETA @ q.s) < 1e-9
        H2 = lambda H: np.einsum("ab,cd,ac,bd->", H, H, ETA, ETA)
        assert abs(H2(qp.H) - H2(q.H)) < 1e-8


def test_apply_lorentz_inverse(rng):
    q = random_quintuple(rng)
    lt = random_lorentz(seed=3)
    back = apply_lorentz(apply_lorentz(q, lt), lt.inverse)
    assert quintuple_difference(q, back) < 1e-10


def test_boost_and_rotation_are_lorentz():
    b = boost(np.array([1.0, 2.0, -1.0]), 0.7)
    r = rotation(np.array([0.0, 0.0, 1.0]), 1.1)
    for lt in (b, r):
        assert np.abs(lt.w.T @ ETA @ lt.w - ETA).max() < 1e-12
    # rotation leaves the time axis alone
    assert np.abs(r.w[0] - np.array([1, 0, 0, 0])).max() < 1e-14


def test_from_dict_strict():
    with pytest.raises(InputError):
        TensorQuintuple.from_dict({"m": 0, "j": [1, 0, 0, 0], "s": [0] * 4,
                                   "H": [0] * 6, "n": 0, "bogus": 1})


def test_dict_roundtrip(rng):
    q = random_quintuple(rng)
    back = TensorQuintuple.from_dict(q.to_dict())
    assert quintuple_difference(q, back) == 0.0
