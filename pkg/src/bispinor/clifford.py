"""Concrete Dirac matrix representations for signature (-,+,+,+).

Two frozen realizations are provided: an all-real Majorana-type set and a
complex Dirac-type set.  From either we derive the anti-Hermitian
intertwiner D (D g_k D^-1 = -g_k^+), the transpose intertwiner C
(C g_k C^-1 = -g_k^T), the bivector generators S_mn, and the 16-element
Hermitian matrix basis used to assemble the tensor matrix M.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.linalg as sla

from .errors import NoIntertwiner

MAJORANA_REAL = "majorana_real"
DIRAC_COMPLEX = "dirac_complex"
REP_KINDS = (MAJORANA_REAL, DIRAC_COMPLEX)

#: Minkowski metric in the local (Galilean) frame.
ETA = np.diag([-1.0, 1.0, 1.0, 1.0])
ETA.setflags(write=False)

#: S_mn = SIGMA_FACTOR * [g_m, g_n].  Kept as a named constant so a factor
#: mismatch against the closed-form spectrum is detectable by calibration.
SIGMA_FACTOR = 0.5

_TOL = 1e-12


def _real_majorana_gammas() -> np.ndarray:
    """All-real gamma set: g0^2 = -E, g_k^2 = +E, built from 2x2 blocks."""
    i2 = np.eye(2)
    ep = np.array([[0.0, 1.0], [-1.0, 0.0]])
    s1 = np.array([[0.0, 1.0], [1.0, 0.0]])
    s3 = np.array([[1.0, 0.0], [0.0, -1.0]])
    return np.stack([
        np.kron(ep, i2),
        np.kron(s1, i2),
        np.kron(s3, s1),
        np.kron(s3, s3),
    ]).astype(complex)


def _complex_dirac_gammas() -> np.ndarray:
    """i times the standard (+,-,-,-) Dirac set, adapted to (-,+,+,+)."""
    s = [
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    ]
    z = np.zeros((2, 2), dtype=complex)
    g = [np.block([[np.eye(2), z], [z, -np.eye(2)]])]
    for k in range(3):
        g.append(np.block([[z, s[k]], [-s[k], z]]))
    return 1j * np.stack(g)


def _lock(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class DiracRep:
    """A fixed 4x4 realization of the Dirac matrix apparatus."""

    kind: str
    gamma: np.ndarray        # (4, 4, 4): g_0 .. g_3
    gamma5: np.ndarray       # g5 = g0 g1 g2 g3, squares to -E
    sigma: np.ndarray        # (4, 4, 4, 4): S_mn = 1/2 [g_m, g_n]
    D: np.ndarray            # anti-Hermitian intertwiner for the adjoint
    D_inv: np.ndarray
    C: np.ndarray            # intertwiner for the transpose (Table-1 system 2)
    C_inv: np.ndarray

    @property
    def is_real(self) -> bool:
        return self.kind == MAJORANA_REAL


def _solve_intertwiner(gammas: np.ndarray, adjoint) -> np.ndarray:
    """Nonzero X with X g_k + adjoint(g_k) X = 0 for all k, via null space.

    The four 16x16 Sylvester blocks are stacked into a 64x16 system whose
    one-dimensional null space carries the intertwiner.
    """
    eye = np.eye(4)
    rows = []
    for k in range(4):
        gk = gammas[k]
        # column-major vec: vec(X g) = (g^T (x) E) vec(X), vec(a X) = (E (x) a) vec(X)
        rows.append(np.kron(gk.T, eye) + np.kron(eye, adjoint(gk)))
    system = np.vstack(rows)
    _, sv, vh = np.linalg.svd(system)
    if sv[-1] > 1e-8:
        raise NoIntertwiner(f"no null space (smallest singular value {sv[-1]:.3e})")
    return vh[-1].conj().reshape(4, 4, order="F")


def _fix_antihermitian_phase(X: np.ndarray) -> np.ndarray:
    """Rotate the scalar phase so X becomes anti-Hermitian."""
    num = np.vdot(X.ravel(), X.conj().T.ravel())
    den = np.vdot(X.ravel(), X.ravel())
    c = num / den                       # X^+ = conj(c) X on the 1-dim solution line
    theta = np.angle(-1.0 / np.conj(c)) / 2.0
    return np.exp(1j * theta) * X


def _normalize_intertwiner(X: np.ndarray) -> np.ndarray:
    """|det| = 1 plus a frozen sign convention on the first nonzero entry."""
    X = X / abs(np.linalg.det(X)) ** 0.25
    for v in X.ravel():
        if abs(v) > 1e-8:
            lead = v
            break
    else:
        raise NoIntertwiner("zero intertwiner")
    if abs(lead.imag) > 1e-10:
        if lead.imag < 0:
            X = -X
    elif lead.real < 0:
        X = -X
    return X


def find_intertwiner(gammas: np.ndarray) -> np.ndarray:
    """Anti-Hermitian D with D g_k D^-1 = -g_k^+, det-normalized."""
    D = _solve_intertwiner(gammas, lambda g: g.conj().T)
    D = _fix_antihermitian_phase(D)
    return _normalize_intertwiner(D)


def find_transpose_intertwiner(gammas: np.ndarray) -> np.ndarray:
    """C with C g_k C^-1 = -g_k^T, det-normalized (system 2 of the basis table)."""
    C = _solve_intertwiner(gammas, lambda g: g.T)
    # For real gammas transpose equals adjoint, so the same phase fix applies;
    # for the complex kind the phase is immaterial to the basis tests and we
    # reuse the convention for determinism.
    C = _fix_antihermitian_phase(C)
    return _normalize_intertwiner(C)


@lru_cache(maxsize=None)
def build_rep(kind: str) -> DiracRep:
    """Return the frozen representation of the requested kind, verified."""
    if kind == MAJORANA_REAL:
        gam = _real_majorana_gammas()
    elif kind == DIRAC_COMPLEX:
        gam = _complex_dirac_gammas()
    else:
        raise ValueError(f"unknown representation kind: {kind!r}")

    eye = np.eye(4)
    for m in range(4):
        for n in range(4):
            resid = gam[m] @ gam[n] + gam[n] @ gam[m] - 2.0 * ETA[m, n] * eye
            assert np.abs(resid).max() < _TOL, (kind, m, n)

    g5 = gam[0] @ gam[1] @ gam[2] @ gam[3]
    sigma = np.empty((4, 4, 4, 4), dtype=complex)
    for m in range(4):
        for n in range(4):
            sigma[m, n] = SIGMA_FACTOR * (gam[m] @ gam[n] - gam[n] @ gam[m])

    D = find_intertwiner(gam)
    C = find_transpose_intertwiner(gam)
    Dinv = np.linalg.inv(D)
    Cinv = np.linalg.inv(C)

    assert np.abs(D + D.conj().T).max() < _TOL
    assert np.abs(Dinv + Dinv.conj().T).max() < _TOL
    for k in range(4):
        assert np.abs(D @ gam[k] @ Dinv + gam[k].conj().T).max() < 1e-12
        assert np.abs(C @ gam[k] @ Cinv + gam[k].T).max() < 1e-12
    if kind == MAJORANA_REAL:
        assert np.abs(gam.imag).max() == 0.0

    return DiracRep(
        kind=kind,
        gamma=_lock(gam),
        gamma5=_lock(g5),
        sigma=_lock(sigma),
        D=_lock(D),
        D_inv=_lock(Dinv),
        C=_lock(C),
        C_inv=_lock(Cinv),
    )


@dataclass(frozen=True)
class HermitianBasis16:
    """The 16 Hermitian matrices spanning 4x4 space, with their trace Gram."""

    elements: np.ndarray     # (16, 4, 4), fixed order (see build_basis16)
    gram: np.ndarray         # (16, 16), Sp(B_i B_j)


#: Upper-triangular index pairs in storage order for antisymmetric tensors.
PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def build_basis16(rep: DiracRep) -> HermitianBasis16:
    """Hermitian basis {-iD^-1; g_a D^-1; -i g5 g_a D^-1; -S_ab D^-1; i g5 D^-1}.

    Element order: scalar slot, 4 vector slots, 4 pseudo-vector slots, the
    6 tensor slots in PAIRS order, then the pseudo-scalar slot.
    """
    Dinv = rep.D_inv
    elems = [-1j * Dinv]
    elems += [rep.gamma[a] @ Dinv for a in range(4)]
    elems += [-1j * rep.gamma5 @ rep.gamma[a] @ Dinv for a in range(4)]
    elems += [-rep.sigma[a, b] @ Dinv for a, b in PAIRS]
    elems.append(1j * rep.gamma5 @ Dinv)
    B = np.stack(elems)
    for i, e in enumerate(B):
        assert np.abs(e - e.conj().T).max() < _TOL, f"basis element {i} not Hermitian"
    gram = np.einsum("iab,jba->ij", B, B)
    assert np.abs(gram.imag).max() < 1e-10
    gram = gram.real
    assert np.linalg.matrix_rank(gram, tol=1e-8) == 16
    return HermitianBasis16(elements=_lock(B), gram=_lock(gram))


def expand_on_basis(basis: HermitianBasis16, M: np.ndarray) -> np.ndarray:
    """Coefficients c with M = sum_i c_i B_i, via a Gram solve."""
    rhs = np.einsum("iab,ba->i", basis.elements, M)
    return np.linalg.solve(basis.gram, rhs)


def lorentz_spin(rep: DiracRep, w: np.ndarray) -> np.ndarray:
    """Spin-representation matrix L of a proper orthochronous Lorentz w.

    Built as exp(1/4 theta^{mn} S_mn) from the matrix logarithm of w, so
    that L g_k L^-1 = w^p_k g_p.  Orthogonal (unitary) only for spatial
    rotations; boosts yield a Hermitian positive factor instead.
    """
    G = sla.logm(w)
    if np.abs(G.imag).max() > 1e-8:
        raise ValueError("w is not in the proper orthochronous component")
    theta_up = ETA @ (ETA @ G.real) @ ETA        # theta^{mn} from G^k_p
    L = sla.expm(0.25 * np.einsum("mn,mnab->ab", theta_up, rep.sigma))
    if rep.is_real:
        L = L.real.astype(complex)
    return L


def rotation_spin(rep: DiracRep, axis_a: int, axis_b: int, angle: float) -> np.ndarray:
    """Spin matrix of a spatial rotation by `angle` in the (a, b) plane."""
    if not (1 <= axis_a <= 3 and 1 <= axis_b <= 3 and axis_a != axis_b):
        raise ValueError("rotation plane must use two distinct spatial axes")
    w = np.eye(4)
    c, s = np.cos(angle), np.sin(angle)
    w[axis_a, axis_a] = c
    w[axis_b, axis_b] = c
    w[axis_a, axis_b] = -s
    w[axis_b, axis_a] = s
    return lorentz_spin(rep, w)


def boost_spin(rep: DiracRep, axis: int, rapidity: float) -> np.ndarray:
    """Spin matrix of a boost along a spatial axis (not orthogonal)."""
    if not 1 <= axis <= 3:
        raise ValueError("boost axis must be 1..3")
    w = np.eye(4)
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    w[0, 0] = ch
    w[axis, axis] = ch
    w[0, axis] = sh
    w[axis, 0] = sh
    return lorentz_spin(rep, w)
