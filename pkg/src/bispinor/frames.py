"""Tensor quintuples, tetrads, and Lorentz transformations of the local frame.

All tangent-space algebra uses Galilean coordinates, i.e. the flat metric
diag(-1, 1, 1, 1).  World-frame data carries its own metric; a tetrad maps
between the two index types.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

import numpy as np

from .clifford import ETA
from .errors import BadSignature, InputError, NotLorentz

WORLD = "world"
LOCAL = "local"

_H_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _levi_civita4() -> np.ndarray:
    E = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        sign = 1
        p = list(perm)
        for i in range(4):
            for j in range(i + 1, 4):
                if p[i] > p[j]:
                    sign = -sign
        E[perm] = sign
    return E


#: Fully antisymmetric symbol with E_{0123} = +1 (local Galilean frame).
LEVI_CIVITA = _levi_civita4()
LEVI_CIVITA.setflags(write=False)


def raise_antisym(H_lo: np.ndarray, g_inv: np.ndarray = ETA) -> np.ndarray:
    """H^{ab} = g^{am} g^{bn} H_{mn}."""
    return g_inv @ H_lo @ g_inv.T


@dataclass(frozen=True)
class TensorQuintuple:
    """The five given tensors: scalar, vector j^a, pseudo-vector s_a,
    antisymmetric tensor H_ab (lower indices), pseudo-scalar."""

    m: float
    j: np.ndarray            # (4,) contravariant
    s: np.ndarray            # (4,) covariant
    H: np.ndarray            # (4, 4) antisymmetric, covariant
    n: float
    frame: str = LOCAL

    def __post_init__(self):
        j = np.asarray(self.j, dtype=float).reshape(4)
        s = np.asarray(self.s, dtype=float).reshape(4)
        H = np.asarray(self.H, dtype=float).reshape(4, 4)
        if np.abs(H + H.T).max() > 1e-12 * max(1.0, np.abs(H).max()):
            raise InputError("H must be antisymmetric")
        H = 0.5 * (H - H.T)
        for a in (j, s, H):
            a.setflags(write=False)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "H", H)
        if self.frame not in (WORLD, LOCAL):
            raise InputError(f"frame must be 'world' or 'local', got {self.frame!r}")

    @property
    def h6(self) -> np.ndarray:
        """The six independent H components in (01,02,03,12,13,23) order."""
        return np.array([self.H[a, b] for a, b in _H_PAIRS])

    @staticmethod
    def from_h6(m: float, j, s, h6, n: float, frame: str = LOCAL) -> "TensorQuintuple":
        H = np.zeros((4, 4))
        for (a, b), v in zip(_H_PAIRS, np.asarray(h6, dtype=float)):
            H[a, b] = v
            H[b, a] = -v
        return TensorQuintuple(m=float(m), j=j, s=s, H=H, n=float(n), frame=frame)

    @staticmethod
    def zero(frame: str = LOCAL) -> "TensorQuintuple":
        return TensorQuintuple(0.0, np.zeros(4), np.zeros(4), np.zeros((4, 4)), 0.0, frame)

    def to_dict(self) -> dict:
        d = {
            "m": float(self.m),
            "j": [float(x) for x in self.j],
            "s": [float(x) for x in self.s],
            "H": [float(x) for x in self.h6],
            "n": float(self.n),
            "frame": self.frame,
        }
        return d

    @staticmethod
    def from_dict(d: dict) -> "TensorQuintuple":
        allowed = {"m", "j", "s", "H", "n", "frame", "metric"}
        unknown = set(d) - allowed
        if unknown:
            raise InputError(f"unknown quintuple fields: {sorted(unknown)}")
        try:
            return TensorQuintuple.from_h6(
                d["m"], d["j"], d["s"], d["H"], d["n"], d.get("frame", LOCAL)
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed quintuple: {exc}") from exc

    def max_abs(self) -> float:
        return max(abs(self.m), np.abs(self.j).max(), np.abs(self.s).max(),
                   np.abs(self.H).max(), abs(self.n))


def quintuple_difference(a: TensorQuintuple, b: TensorQuintuple) -> float:
    """Max-abs componentwise difference."""
    return max(
        abs(a.m - b.m),
        np.abs(a.j - b.j).max(),
        np.abs(a.s - b.s).max(),
        np.abs(a.H - b.H).max(),
        abs(a.n - b.n),
    )


@dataclass(frozen=True)
class WorldMetric:
    """Symmetric metric with signature (-,+,+,+)."""

    g: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.g, dtype=float).reshape(4, 4)
        if np.abs(g - g.T).max() > 1e-10 * max(1.0, np.abs(g).max()):
            raise BadSignature("metric is not symmetric")
        g = 0.5 * (g + g.T)
        ev = np.linalg.eigvalsh(g)
        if not (ev[0] < 0 and ev[1] > 0):
            raise BadSignature(f"metric eigenvalues {ev} are not (-,+,+,+)")
        g.setflags(write=False)
        object.__setattr__(self, "g", g)

    @property
    def g_inv(self) -> np.ndarray:
        return np.linalg.inv(self.g)


@dataclass(frozen=True)
class Tetrad:
    """Frame field H_a^k (row: world index, column: local index)."""

    H_frame: np.ndarray
    inverse: np.ndarray

    def __post_init__(self):
        for a in (self.H_frame, self.inverse):
            np.asarray(a).setflags(write=False)


@dataclass(frozen=True)
class LorentzTransform:
    """Local frame rotation w^k_p preserving the Galilean metric."""

    w: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float).reshape(4, 4)
        if np.abs(w.T @ ETA @ w - ETA).max() >= 1e-8:
            raise NotLorentz("w does not preserve the Minkowski metric")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    @property
    def inverse(self) -> "LorentzTransform":
        return LorentzTransform(ETA @ self.w.T @ ETA)


def tetrad_from_metric(metric: WorldMetric) -> Tetrad:
    """Canonical tetrad with g = H eta H^T.

    A hyperbolic triangular factorization is attempted first (lower
    triangular, positive diagonal); metrics whose leading minors do not
    admit it fall back to a spectral construction with a deterministic
    column sign convention.
    """
    g = metric.g
    L = _hyperbolic_cholesky(g)
    if L is None:
        ev, Q = np.linalg.eigh(g)     # ascending: the negative eigenvalue first
        for c in range(4):
            col = Q[:, c]
            lead = col[np.argmax(np.abs(col) > 1e-12)]
            if lead < 0:
                Q[:, c] = -col
        L = Q @ np.diag(np.sqrt(np.abs(ev)))
    tet = Tetrad(H_frame=L, inverse=np.linalg.inv(L))
    assert np.abs(L @ ETA @ L.T - g).max() < 1e-9 * max(1.0, np.abs(g).max())
    return tet


def _hyperbolic_cholesky(g: np.ndarray):
    """Lower-triangular L with g = L eta L^T, or None if not admissible."""
    if g[0, 0] >= -1e-14:
        return None
    L = np.zeros((4, 4))
    L[0, 0] = np.sqrt(-g[0, 0])
    L[1:, 0] = -g[1:, 0] / L[0, 0]
    rest = g[1:, 1:] + np.outer(L[1:, 0], L[1:, 0])
    try:
        L[1:, 1:] = np.linalg.cholesky(rest)
    except np.linalg.LinAlgError:
        return None
    return L


def world_to_local(q: TensorQuintuple, tet: Tetrad) -> TensorQuintuple:
    """Convert world-index components to local Galilean components."""
    if q.frame != WORLD:
        raise InputError("quintuple is not in the world frame")
    Hf, Hi = tet.H_frame, tet.inverse
    j_loc = Hf.T @ q.j                       # j^k = H_a^k j^a
    s_loc = Hi @ q.s                         # s_k = H_k^a s_a
    H_loc = Hi @ q.H @ Hi.T                  # H_mn = H_m^a H_n^b H_ab
    return TensorQuintuple(q.m, j_loc, s_loc, H_loc, q.n, frame=LOCAL)


def local_to_world(q: TensorQuintuple, tet: Tetrad) -> TensorQuintuple:
    if q.frame != LOCAL:
        raise InputError("quintuple is not in the local frame")
    Hf, Hi = tet.H_frame, tet.inverse
    return TensorQuintuple(q.m, Hi.T @ q.j, Hf @ q.s, Hf @ q.H @ Hf.T, q.n, frame=WORLD)


def apply_lorentz(q: TensorQuintuple, lt: LorentzTransform) -> TensorQuintuple:
    """Rotate the local frame: vectors with w, covectors with w^-T."""
    if q.frame != LOCAL:
        raise InputError("apply_lorentz expects a local-frame quintuple")
    w = lt.w
    winv = ETA @ w.T @ ETA
    return TensorQuintuple(q.m, w @ q.j, winv.T @ q.s, winv.T @ q.H @ winv, q.n, LOCAL)


def boost(direction, rapidity: float) -> LorentzTransform:
    """Pure boost along a spatial direction."""
    d = np.asarray(direction, dtype=float).reshape(3)
    norm = np.linalg.norm(d)
    if norm < 1e-300 or rapidity == 0.0:
        return LorentzTransform(np.eye(4))
    d = d / norm
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    w = np.eye(4)
    w[0, 0] = ch
    w[0, 1:] = sh * d
    w[1:, 0] = sh * d
    w[1:, 1:] = np.eye(3) + (ch - 1.0) * np.outer(d, d)
    return LorentzTransform(w)


def rotation(axis, angle: float) -> LorentzTransform:
    """Spatial rotation about an axis (Rodrigues form)."""
    a = np.asarray(axis, dtype=float).reshape(3)
    norm = np.linalg.norm(a)
    if norm < 1e-300 or angle == 0.0:
        return LorentzTransform(np.eye(4))
    a = a / norm
    K = np.array([[0, -a[2], a[1]], [a[2], 0, -a[0]], [-a[1], a[0], 0]])
    R3 = np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * (K @ K)
    w = np.eye(4)
    w[1:, 1:] = R3
    return LorentzTransform(w)


def random_lorentz(seed: int, rapidity_bound: float = 1.0,
                   include_rotation: bool = True) -> LorentzTransform:
    """Deterministic proper orthochronous transform: boost times rotation."""
    if rapidity_bound < 0:
        raise ValueError("rapidity_bound must be nonnegative")
    rng = np.random.default_rng(seed)
    d = rng.normal(size=3)
    th = rng.uniform(0.0, rapidity_bound)
    w = boost(d, th).w
    if include_rotation:
        axis = rng.normal(size=3)
        ang = rng.uniform(0.0, 2 * np.pi)
        w = w @ rotation(axis, ang).w
    return LorentzTransform(w)
