"""Factoring M = Z Z^+ and everything downstream of Z.

Covers: the arithmetic (nonnegative Hermitian) square root, enumeration of
the sign classes of Hermitian factors, bilinear extraction of the tensor
quintuple from Z, the polar split into amplitude and phase, the rotation
covariance of the polar factors, and the projector split of Z into four
bispinor columns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .clifford import ETA, DiracRep, PAIRS
from .errors import (
    Infeasible,
    NotNonnegative,
    NotUnitary,
    ProjectorConstructionFailed,
)
from .frames import LOCAL, TensorQuintuple, quintuple_difference
from .spectrum import MMatrix, RANK_TOL, build_M, spectrum_report

#: Eigenvalues of M in [-CLAMP_TOL, 0) are clamped to zero before roots.
CLAMP_TOL = 1e-10
_NEG_TOL = 1e-8
_EQUIV_TOL = 1e-9


@dataclass(frozen=True)
class BispinorMatrix:
    """A 4x4 matrix Z with Z Z^+ = M, tagged with its representation kind."""

    Z: np.ndarray
    rep_kind: str
    gauge: np.ndarray | None = None      # right unitary applied to the root


@dataclass(frozen=True)
class HermitianFactorSet:
    factors: list            # Hermitian H with H H^+ = M
    sign_classes: list       # sign vector over the nonzero eigenvalues
    class_labels: list       # equivalence-class index per factor
    nonequivalent_count: int
    rank: int


@dataclass(frozen=True)
class PolarFactors:
    amplitude: np.ndarray        # symmetric (Hermitian) nonnegative
    phase: np.ndarray            # orthogonal (unitary)
    amplitude_coeffs: dict       # expansion on the symmetric system-1 basis


@dataclass(frozen=True)
class BispinorSplit:
    projectors: list
    columns: list


def _eig_nonneg(M: np.ndarray):
    ev, V = np.linalg.eigh(M)
    if ev.min() < -_NEG_TOL * max(1.0, abs(ev.max())):
        raise NotNonnegative(f"min eigenvalue {ev.min():.3e}")
    return np.where(ev < 0.0, 0.0, ev), V


def hermitian_sqrt(M: MMatrix | np.ndarray) -> np.ndarray:
    """The unique Hermitian nonnegative root of a nonnegative Hermitian M."""
    A = M.M if isinstance(M, MMatrix) else np.asarray(M)
    ev, V = _eig_nonneg(A)
    return (V * np.sqrt(ev)) @ V.conj().T


def enumerate_hermitian_factors(M: MMatrix | np.ndarray) -> HermitianFactorSet:
    """All Hermitian factors V diag(eps_i sqrt(l_i)) V^+ over sign choices.

    Factors are grouped into unitary-equivalence classes by their
    eigenvalue multisets (Hermitian matrices are unitarily equivalent iff
    they share a spectrum).
    """
    A = M.M if isinstance(M, MMatrix) else np.asarray(M)
    ev, V = _eig_nonneg(A)
    lam1 = max(ev.max(), 0.0)
    nonzero = [i for i in range(4) if ev[i] > RANK_TOL * max(lam1, 1.0)]
    r = len(nonzero)
    factors, signs, keys = [], [], []
    for eps in itertools.product((1.0, -1.0), repeat=r):
        d = np.sqrt(ev)
        for i, idx in enumerate(nonzero):
            d[idx] *= eps[i]
        H = (V * d) @ V.conj().T
        factors.append(H)
        signs.append(tuple(int(e) for e in eps))
        keys.append(tuple(np.sort(d)))
    labels = []
    reps: list[tuple] = []
    for key in keys:
        for li, rk in enumerate(reps):
            if max(abs(a - b) for a, b in zip(key, rk)) < _EQUIV_TOL * max(1.0, lam1):
                labels.append(li)
                break
        else:
            labels.append(len(reps))
            reps.append(key)
    return HermitianFactorSet(
        factors=factors, sign_classes=signs, class_labels=labels,
        nonequivalent_count=len(reps), rank=r,
    )


def _check_gauge(U: np.ndarray, real_kind: bool) -> np.ndarray:
    U = np.asarray(U)
    if np.abs(U @ U.conj().T - np.eye(4)).max() >= 1e-8:
        raise NotUnitary("gauge matrix is not unitary")
    if real_kind and np.abs(U.imag).max() >= 1e-8:
        raise NotUnitary("real kind requires an orthogonal (real) gauge matrix")
    return U.astype(complex)


def solve_Z(q: TensorQuintuple, rep: DiracRep,
            gauge: np.ndarray | None = None) -> BispinorMatrix:
    """Z = (arithmetic root of M) U; raises Infeasible when M is indefinite."""
    report = spectrum_report(q, rep)
    if not report.feasible:
        raise Infeasible(report.margin)
    if gauge is not None:
        gauge = _check_gauge(gauge, rep.is_real)
    h = hermitian_sqrt(build_M(q, rep))
    Z = h if gauge is None else h @ gauge
    return BispinorMatrix(Z=Z, rep_kind=rep.kind, gauge=gauge)


def bilinears(Z: BispinorMatrix | np.ndarray, rep: DiracRep) -> TensorQuintuple:
    """Extract (m, j^a, s_a, H_ab, n) from Z by bilinear traces."""
    Zm = Z.Z if isinstance(Z, BispinorMatrix) else np.asarray(Z)
    D = rep.D
    W = Zm @ Zm.conj().T @ D      # traces below are Sp(D X Z Z^+) = Sp(X W)
    m = 1j * np.trace(W)
    j = np.array([np.trace(ETA[a, a] * rep.gamma[a] @ W) for a in range(4)])
    s = np.array([1j * np.trace(rep.gamma5 @ rep.gamma[a] @ W) for a in range(4)])
    H = np.zeros((4, 4), dtype=complex)
    for a, b in PAIRS:
        H[a, b] = np.trace(rep.sigma[a, b] @ W)
        H[b, a] = -H[a, b]
    n = 1j * np.trace(rep.gamma5 @ W)
    parts = np.concatenate([[m], j, s, H.ravel(), [n]])
    scale = max(1.0, np.abs(parts).max())
    assert np.abs(parts.imag).max() < 1e-10 * scale, "bilinears must be real"
    return TensorQuintuple(m.real, j.real, s.real, H.real, n.real, frame=LOCAL)


def roundtrip_residual(q: TensorQuintuple, rep: DiracRep,
                       gauge: np.ndarray | None = None) -> float:
    """Max-abs difference between q and bilinears(solve_Z(q))."""
    return quintuple_difference(q, bilinears(solve_Z(q, rep, gauge=gauge), rep))


def _system1_symmetric_basis(rep: DiracRep):
    """The ten symmetric system-1 matrices g_k D^-1 and S_mn D^-1."""
    mats = [rep.gamma[k] @ rep.D_inv for k in range(4)]
    mats += [rep.sigma[a, b] @ rep.D_inv for a, b in PAIRS]
    return np.stack(mats)


def polar_decompose(Z: BispinorMatrix | np.ndarray,
                    rep: DiracRep | None = None) -> PolarFactors:
    """Z = amplitude . phase with a nonnegative amplitude and orthogonal phase.

    The amplitude is the arithmetic root of Z Z^+ and is unique; for
    singular Z the phase is completed from the singular-vector pairs and
    only the amplitude is contract-bearing.
    """
    Zm = Z.Z if isinstance(Z, BispinorMatrix) else np.asarray(Z)
    W, sv, Vh = np.linalg.svd(Zm)
    amplitude = (W * sv) @ W.conj().T
    phase = W @ Vh
    coeffs = {}
    if rep is not None:
        coeffs = _amplitude_coefficients(amplitude, rep)
    return PolarFactors(amplitude=amplitude, phase=phase, amplitude_coeffs=coeffs)


def _amplitude_coefficients(amplitude: np.ndarray, rep: DiracRep) -> dict:
    """Expansion of the amplitude on the symmetric system-1 matrices.

    Conventions: amplitude = -v0 g_0 D^-1 + v_b g_b D^-1
    + w_ab S_ab D^-1 - 2 w_0b S_0b D^-1 (spatial pairs a < b).
    """
    B = _system1_symmetric_basis(rep)
    gram = np.einsum("iab,jba->ij", B, B)
    rhs = np.einsum("iab,ba->i", B, amplitude)
    c = np.linalg.solve(gram, rhs)
    assert np.abs(c.imag).max() < 1e-9 * max(1.0, np.abs(c).max())
    c = c.real
    w0b = {}
    wab = {}
    for idx, (a, b) in enumerate(PAIRS):
        if a == 0:
            w0b[b] = -0.5 * c[4 + idx]
        else:
            wab[(a, b)] = c[4 + idx]
    return {"v0": -c[0], "v": c[1:4].copy(), "w_ab": wab, "w_0b": w0b}


def rotation_covariance_check(Z: BispinorMatrix | np.ndarray,
                              R: np.ndarray) -> tuple:
    """Residuals of the polar-factor transformation law under Z -> R Z.

    For orthogonal R both residuals vanish; for a non-orthogonal spin
    matrix (a boost) there is no such law and the residuals are large.
    """
    Zm = Z.Z if isinstance(Z, BispinorMatrix) else np.asarray(Z)
    p = polar_decompose(Zm)
    p2 = polar_decompose(R @ Zm)
    res_H = np.abs(p2.amplitude - R @ p.amplitude @ R.conj().T).max()
    res_U = np.abs(p2.phase - R @ p.phase).max()
    return float(res_H), float(res_U)


def split_bispinors(Z: BispinorMatrix | np.ndarray, rep: DiracRep) -> BispinorSplit:
    """Four rank-1 projectors P and the columns Z P summing to Z.

    Built from the commuting involutions A = g_1 and B = g_0 g_2 (both
    square to the identity and are real for the real kind):
    P = 1/4 (E + eta A)(E + lam B).
    """
    Zm = Z.Z if isinstance(Z, BispinorMatrix) else np.asarray(Z)
    A = rep.gamma[1]
    B = rep.gamma[0] @ rep.gamma[2]
    eye = np.eye(4)
    if (np.abs(A @ A - eye).max() > 1e-12 or np.abs(B @ B - eye).max() > 1e-12
            or np.abs(A @ B - B @ A).max() > 1e-12):
        raise ProjectorConstructionFailed("involutions do not commute/square to E")
    projectors = []
    for h in (1.0, -1.0):
        for l in (1.0, -1.0):
            projectors.append(0.25 * (eye + h * A) @ (eye + l * B))
    total = sum(projectors)
    if np.abs(total - eye).max() > 1e-12:
        raise ProjectorConstructionFailed("projectors do not sum to E")
    columns = [Zm @ P for P in projectors]
    return BispinorSplit(projectors=projectors, columns=columns)
