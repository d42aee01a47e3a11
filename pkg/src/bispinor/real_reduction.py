"""The real-number-field path: Dirac-basis expansion of Z and the
quadratic coefficient system.

A Hermitian Z expands over {E, i g0, g_k, i g5 g0, g5 g_k, i g5, g0 g_k,
i g5 g0 g_k} with real coefficients.  Multiplying Z by its adjoint turns
those coefficients into closed quadratic expressions for the tensor
quintuple; over the real field only (a, A_k, B_k, C_k) survive and, after
normalizing by the time component of the current, the system collapses to
four cross-product equations on the unit 10-sphere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import DiracRep, PAIRS
from .errors import DegenerateNormalization, NoConvergence
from .frames import LOCAL, TensorQuintuple
from .factorization import solve_Z

_EPS3 = np.zeros((3, 3, 3))
_EPS3[0, 1, 2] = _EPS3[1, 2, 0] = _EPS3[2, 0, 1] = 1.0
_EPS3[0, 2, 1] = _EPS3[2, 1, 0] = _EPS3[1, 0, 2] = -1.0


@dataclass(frozen=True)
class RealExpansion:
    """Coefficients of Z over the Dirac basis (all real for Hermitian Z)."""

    a: float
    b: float
    A0: float
    B0: float
    A: np.ndarray      # (3,)
    B: np.ndarray
    C: np.ndarray
    h: np.ndarray


@dataclass(frozen=True)
class NormalizedSystem:
    """Data of the normalized real-field system."""

    a_vec: np.ndarray
    b_vec: np.ndarray
    c_vec: np.ndarray
    norm: float          # 1/4 j^0


def _expansion_basis(rep: DiracRep) -> np.ndarray:
    """Order: a, A0, A_k, B0, B_k, b, C_k, h_k (16 matrices)."""
    g = rep.gamma
    g5 = rep.gamma5
    mats = [np.eye(4, dtype=complex), 1j * g[0]]
    mats += [g[k] for k in (1, 2, 3)]
    mats += [1j * g5 @ g[0]]
    mats += [g5 @ g[k] for k in (1, 2, 3)]
    mats += [1j * g5]
    mats += [g[0] @ g[k] for k in (1, 2, 3)]
    mats += [1j * g5 @ g[0] @ g[k] for k in (1, 2, 3)]
    return np.stack(mats)


def expand_Z(Z, rep: DiracRep) -> RealExpansion:
    """Project Z onto the Dirac basis; coefficients must come out real."""
    Zm = Z.Z if hasattr(Z, "Z") else np.asarray(Z)
    B = _expansion_basis(rep)
    gram = np.einsum("iab,jab->ij", B.conj(), B)
    rhs = np.einsum("iab,ab->i", B.conj(), Zm)
    c = np.linalg.solve(gram, rhs)
    recon = np.einsum("i,iab->ab", c, B)
    assert np.abs(recon - Zm).max() < 1e-10 * max(1.0, np.abs(Zm).max())
    scale = max(1.0, np.abs(c).max())
    assert np.abs(c.imag).max() < 1e-10 * scale, "Hermitian Z must have real coefficients"
    c = c.real
    return RealExpansion(
        a=c[0], A0=c[1], A=c[2:5].copy(), B0=c[5], B=c[6:9].copy(),
        b=c[9], C=c[10:13].copy(), h=c[13:16].copy(),
    )


def reconstruct_Z(coeffs: RealExpansion, rep: DiracRep) -> np.ndarray:
    B = _expansion_basis(rep)
    c = np.concatenate([
        [coeffs.a, coeffs.A0], coeffs.A, [coeffs.B0], coeffs.B,
        [coeffs.b], coeffs.C, coeffs.h,
    ])
    return np.einsum("i,iab->ab", c, B)


def compose_ZZplus(co: RealExpansion) -> TensorQuintuple:
    """The quintuple implied by Z Z^+ in closed quadratic form."""
    a, b, A0, B0 = co.a, co.b, co.A0, co.B0
    A, B, C, h = co.A, co.B, co.C, co.h
    cross = lambda x, y: np.einsum("kab,a,b->k", _EPS3, x, y)

    j0 = 4.0 * (a * a + A @ A + B @ B + C @ C + b * b + A0 * A0 + B0 * B0 + h @ h)
    H0k = -8.0 * (a * A + cross(B, C) + B0 * h)
    Lk = a * B - cross(A, C) - A0 * h            # = 1/16 eps_kpq H_pq
    jk = 8.0 * (a * C + cross(A, B) + b * h)
    s0 = 8.0 * (a * b + C @ h)
    m = 8.0 * (a * A0 - B @ h)
    n = -8.0 * (a * B0 + A @ h)
    sk = -8.0 * (a * h + A * B0 - A0 * B + b * C)

    H = np.zeros((4, 4))
    H[0, 1:] = H0k
    H[1:, 0] = -H0k
    H[1:, 1:] = 8.0 * np.einsum("kpq,k->pq", _EPS3, Lk)
    return TensorQuintuple(
        m=m, j=np.concatenate([[j0], jk]), s=np.concatenate([[s0], sk]),
        H=H, n=n, frame=LOCAL,
    )


def normalize_system(q: TensorQuintuple) -> NormalizedSystem:
    """Normalized data (a_k, b_k, c_k) of the real-field system.

    a_k = -1/2 H_0k / j^0, b_k = 1/4 eps_kpq H_pq / j^0, c_k = 1/2 j_k / j^0.
    """
    j0 = q.j[0]
    if j0 <= 1e-12:
        raise DegenerateNormalization(f"j^0 = {j0:.6g} must be positive")
    H0k = q.H[0, 1:]
    Hpq = q.H[1:, 1:]
    a_vec = -0.5 * H0k / j0
    b_vec = 0.25 * np.einsum("kpq,pq->k", _EPS3, Hpq) / j0
    c_vec = 0.5 * q.j[1:] / j0
    return NormalizedSystem(a_vec=a_vec, b_vec=b_vec, c_vec=c_vec, norm=0.25 * j0)


def system_residual(a: float, x, y, z, s: NormalizedSystem) -> float:
    """Max residual of the four normalized equations."""
    cr = np.cross
    return max(
        abs(a * a + x @ x + y @ y + z @ z - 1.0),
        np.abs(a * x + cr(y, z) - s.a_vec).max(),
        np.abs(a * y + cr(z, x) - s.b_vec).max(),
        np.abs(a * z + cr(x, y) - s.c_vec).max(),
    )


def _quintuple_from_system(s: NormalizedSystem) -> TensorQuintuple:
    """Real-field quintuple with j^0 = 4 realizing the normalized data."""
    j0 = 4.0
    H = np.zeros((4, 4))
    H[0, 1:] = -2.0 * s.a_vec * j0
    H[1:, 0] = -H[0, 1:]
    H[1:, 1:] = 2.0 * j0 * np.einsum("pqk,k->pq", _EPS3, s.b_vec)
    jk = 2.0 * s.c_vec * j0
    return TensorQuintuple(0.0, np.concatenate([[j0], jk]), np.zeros(4), H, 0.0, LOCAL)


def solve_normalized(s: NormalizedSystem, rep: DiracRep):
    """Solve the normalized system through the spectral factorization.

    Returns (a, x, y, z) on the canonical branch (arithmetic root, trivial
    gauge); raises Infeasible when the underlying M is indefinite.
    """
    if not rep.is_real:
        raise ValueError("the real-field system requires the real representation kind")
    q = _quintuple_from_system(s)
    Z = solve_Z(q, rep)                      # Infeasible propagates
    co = expand_Z(Z, rep)
    scale = np.sqrt(0.25 * q.j[0])           # = 1 for the canonical j^0 = 4
    a = co.a / scale
    x, y, z = co.A / scale, co.B / scale, co.C / scale
    # leftover coefficients must vanish for a real-field input
    extras = max(abs(co.b), abs(co.A0), abs(co.B0), np.abs(co.h).max())
    assert extras < 1e-8, f"non-real-field coefficients {extras:.3e}"
    return a, x, y, z


def solve_normalized_newton(s: NormalizedSystem, seed: int = 0,
                            max_restarts: int = 40, tol: float = 1e-11):
    """Damped-Newton solver for the normalized system (independent of the
    factorization path).  Deterministic given the seed."""
    rng = np.random.default_rng(seed)

    def F(u):
        a, x, y, z = u[0], u[1:4], u[4:7], u[7:10]
        return np.concatenate([
            [a * a + x @ x + y @ y + z @ z - 1.0],
            a * x + np.cross(y, z) - s.a_vec,
            a * y + np.cross(z, x) - s.b_vec,
            a * z + np.cross(x, y) - s.c_vec,
        ])

    def J(u):
        a, x, y, z = u[0], u[1:4], u[4:7], u[7:10]
        sk = lambda v: np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]])
        e3 = np.eye(3)
        top = np.concatenate([[2 * a], 2 * x, 2 * y, 2 * z])[None, :]
        r1 = np.hstack([x[:, None], a * e3, -sk(z), sk(y)])
        r2 = np.hstack([y[:, None], sk(z), a * e3, -sk(x)])
        r3 = np.hstack([z[:, None], -sk(y), sk(x), a * e3])
        return np.vstack([top, r1, r2, r3])

    starts = [np.concatenate([[1.0], s.a_vec, s.b_vec, s.c_vec])]
    for u0 in starts + [rng.normal(size=10) for _ in range(max_restarts)]:
        u = u0 / max(np.linalg.norm(u0), 1e-3)
        for _ in range(200):
            f = F(u)
            if np.abs(f).max() < tol:
                return u[0], u[1:4].copy(), u[4:7].copy(), u[7:10].copy()
            try:
                step = np.linalg.solve(J(u), -f)
            except np.linalg.LinAlgError:
                step = np.linalg.lstsq(J(u), -f, rcond=None)[0]
            lam = 1.0
            base = np.linalg.norm(f)
            while lam > 1e-8:
                trial = u + lam * step
                if np.linalg.norm(F(trial)) < base:
                    u = trial
                    break
                lam *= 0.5
            else:
                break
    raise NoConvergence("Newton iteration failed from all starting points")


def build_Y(j: np.ndarray, H: np.ndarray, rep: DiracRep) -> np.ndarray:
    """Scalar symmetric matrix 1/4 j^k g_k D^-1 - 1/8 H^{mn} S_mn D^-1.

    Uses the symmetric system-1 matrices; H is given with upper local
    indices here (the sum runs over all ordered pairs).
    """
    if not rep.is_real:
        raise ValueError("the Y matrix is defined for the real representation kind")
    j = np.asarray(j, dtype=float).reshape(4)
    H = np.asarray(H, dtype=float).reshape(4, 4)
    Y = 0.25 * np.einsum("k,kab->ab", j, rep.gamma) @ rep.D_inv
    Y = Y - 0.125 * np.einsum("mn,mnab->ab", H, rep.sigma) @ rep.D_inv
    Y = Y.real
    assert np.abs(Y - Y.T).max() < 1e-12 * max(1.0, np.abs(Y).max())
    return Y
