"""Acceptance criteria, one test per criterion, one printed pass/fail line
each (written through the capture so it lands in the terminal log)."""

import time

import numpy as np
import pytest

from bispinor import (
    DIRAC_COMPLEX,
    Infeasible,
    MAJORANA_REAL,
    NormalizedSystem,
    TensorQuintuple,
    apply_lorentz,
    bilinears,
    build_M,
    build_rep,
    compose_ZZplus,
    current_invariants,
    enumerate_hermitian_factors,
    expand_Z,
    hermitian_sqrt,
    kappa,
    lorentz_spin,
    numeric_spectrum,
    polar_decompose,
    quintuple_difference,
    random_lorentz,
    rotation,
    boost,
    rotation_covariance_check,
    roundtrip_residual,
    solve_Z,
    solve_normalized,
    spectrum_report,
    system_residual,
    tetrad_from_metric,
    world_to_local,
    local_to_world,
    WorldMetric,
)
from bispinor.clifford import ETA

from conftest import random_current_quintuple, random_quintuple

SEED = 715517


def emit(capsys, line):
    with capsys.disabled():
        print(line)


def verdict(capsys, num, name, ok, detail):
    emit(capsys, f"criterion {num:2d} [{name}]: "
                 f"{'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {num} ({name}) failed: {detail}"


def test_criterion_01_representation_validity(capsys):
    t0 = time.perf_counter()
    worst = 0.0
    for kind in (MAJORANA_REAL, DIRAC_COMPLEX):
        rep = build_rep(kind)
        for m in range(4):
            for n in range(4):
                acomm = rep.gamma[m] @ rep.gamma[n] + rep.gamma[n] @ rep.gamma[m]
                worst = max(worst, np.abs(acomm - 2 * ETA[m, n] * np.eye(4)).max())
            inter = rep.D @ rep.gamma[m] @ rep.D_inv + rep.gamma[m].conj().T
            worst = max(worst, np.abs(inter).max())
    dt = time.perf_counter() - t0
    verdict(capsys, 1, "representation validity", worst < 1e-12 and dt < 1.0,
            f"max residual {worst:.2e}, {dt:.2f}s")


def test_criterion_02_closed_form_spectrum(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED)
    rep = build_rep(MAJORANA_REAL)
    k0 = kappa(rep.kind)
    worst = 0.0
    worst_k = 0.0
    for _ in range(10_000):
        q = random_current_quintuple(rng, h_scale=rng.uniform(0.1, 1.0))
        r = spectrum_report(q, rep)
        worst = max(worst, np.abs(np.asarray(r.lambda_closed)
                                  - np.asarray(r.lambda_numeric)).max())
        worst_k = max(worst_k, abs(r.kappa - k0))
    dt = time.perf_counter() - t0
    ok = worst < 1e-8 and worst_k < 1e-8 and dt < 30.0
    verdict(capsys, 2, "closed-form spectrum vs numeric", ok,
            f"max |closed-numeric| {worst:.2e}, kappa drift {worst_k:.2e}, {dt:.1f}s")


def test_criterion_03_solvability_equivalence(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED + 1)
    rep = build_rep(MAJORANA_REAL)
    disagreements = 0
    checked = 0
    for _ in range(10_000):
        q = random_quintuple(rng, scale=rng.uniform(0.2, 2.5))
        r = spectrum_report(q, rep)
        min_ev = numeric_spectrum(build_M(q, rep))[-1]
        if abs(r.margin * r.kappa) < 1e-7:
            continue                          # boundary band
        checked += 1
        if r.feasible != (min_ev >= -1e-9):
            disagreements += 1
    dt = time.perf_counter() - t0
    ok = disagreements == 0 and dt < 30.0
    verdict(capsys, 3, "solvability equivalence", ok,
            f"{disagreements} disagreements on {checked} off-band samples, {dt:.1f}s")


def test_criterion_04_round_trip(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED + 2)
    rep = build_rep(MAJORANA_REAL)
    worst = 0.0
    done = 0
    while done < 1000:
        q = random_quintuple(rng, scale=0.35)
        if spectrum_report(q, rep).margin <= 1e-6:
            continue
        worst = max(worst, roundtrip_residual(q, rep))
        done += 1
    dt = time.perf_counter() - t0
    ok = worst < 1e-8 and dt < 10.0
    verdict(capsys, 4, "round trip", ok, f"max residual {worst:.2e}, {dt:.1f}s")


def test_criterion_05_gauge_invariance(capsys):
    rng = np.random.default_rng(SEED + 3)
    rep = build_rep(DIRAC_COMPLEX)
    worst_b = worst_m = 0.0
    done = 0
    while done < 1000:
        q = random_quintuple(rng, scale=0.35)
        try:
            Z = solve_Z(q, rep).Z
        except Infeasible:
            continue
        U, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        ZU = Z @ U
        worst_b = max(worst_b, quintuple_difference(bilinears(ZU, rep),
                                                    bilinears(Z, rep)))
        worst_m = max(worst_m, np.abs(ZU @ ZU.conj().T - Z @ Z.conj().T).max())
        done += 1
    ok = worst_b < 1e-12 and worst_m < 1e-12
    verdict(capsys, 5, "gauge invariance", ok,
            f"bilinear drift {worst_b:.2e}, product drift {worst_m:.2e}")


def test_criterion_06_factor_enumeration(capsys):
    cases = [
        (np.diag([0.0, 0.0, 0.0, 0.0]), 0, 1),
        (np.diag([2.0, 0.0, 0.0, 0.0]), 1, 2),
        (np.diag([1.0, 1.0, 0.0, 0.0]), 2, 3),     # repeated pair collapses
        (np.diag([2.0, 1.0, 0.0, 0.0]), 2, 4),
        (np.diag([3.0, 2.0, 1.0, 0.0]), 3, 8),
        (np.diag([4.0, 3.0, 2.0, 1.0]), 4, 16),
        (np.diag([1.0, 1.0, 1.0, 1.0]), 4, 5),     # fully degenerate
    ]
    ok = True
    details = []
    for M, rank, count in cases:
        fs = enumerate_hermitian_factors(M)
        good = fs.rank == rank and fs.nonequivalent_count == count
        good = good and fs.nonequivalent_count <= 2 ** fs.rank
        good = good and all(np.abs(H @ H.conj().T - M).max() < 1e-10
                            for H in fs.factors)
        ok = ok and good
        details.append(f"r{rank}:{fs.nonequivalent_count}")
    verdict(capsys, 6, "factor enumeration", ok, " ".join(details))


def test_criterion_07_path_equivalence(capsys):
    rng = np.random.default_rng(SEED + 4)
    rep = build_rep(MAJORANA_REAL)
    worst = 0.0
    for _ in range(1000):
        Z = rng.normal(size=(4, 4))
        Z = Z + Z.T
        q1 = compose_ZZplus(expand_Z(Z, rep))
        q2 = bilinears(Z.astype(complex), rep)
        worst = max(worst, quintuple_difference(q1, q2))
    verdict(capsys, 7, "expansion/bilinear path equivalence", worst < 1e-10,
            f"max difference {worst:.2e}")


def test_criterion_08_normalized_system(capsys):
    rng = np.random.default_rng(SEED + 5)
    rep = build_rep(MAJORANA_REAL)
    worst = 0.0
    for _ in range(1000):
        u = rng.normal(size=10)
        u /= np.linalg.norm(u)
        a, x, y, z = u[0], u[1:4], u[4:7], u[7:10]
        s = NormalizedSystem(a * x + np.cross(y, z), a * y + np.cross(z, x),
                             a * z + np.cross(x, y), 1.0)
        sol = solve_normalized(s, rep)
        worst = max(worst, system_residual(*sol, s))
    verdict(capsys, 8, "normalized real-field system", worst < 1e-9,
            f"max equation residual {worst:.2e} over 1000 instances")


def test_criterion_09_frame_covariance(capsys):
    rng = np.random.default_rng(SEED + 6)
    rep = build_rep(MAJORANA_REAL)
    worst_spec = worst_margin = worst_rt = worst_tet = worst_rot = 0.0
    for i in range(100):
        q = random_quintuple(rng, scale=0.3)
        r0 = spectrum_report(q, rep)
        lt = random_lorentz(seed=SEED + i)
        r1 = spectrum_report(apply_lorentz(q, lt), rep)
        worst_spec = max(worst_spec,
                         np.abs(np.asarray(r0.lambda_numeric)
                                - np.asarray(r1.lambda_numeric)).max())
        worst_margin = max(worst_margin, abs(r0.margin - r1.margin))
        if r0.feasible and r0.margin > 1e-6:
            worst_rt = max(worst_rt,
                           abs(roundtrip_residual(q, rep)
                               - roundtrip_residual(apply_lorentz(q, lt), rep)))
        # tetrad change: push to a random world frame and back
        lam = rng.normal(size=(4, 4)) + 0.5 * np.eye(4)
        if abs(np.linalg.det(lam)) < 0.1:
            continue
        tet = tetrad_from_metric(WorldMetric(lam @ ETA @ lam.T))
        back = world_to_local(local_to_world(q, tet), tet)
        worst_tet = max(worst_tet,
                        abs(spectrum_report(back, rep).margin - r0.margin))
    # polar covariance under rotations
    for i in range(20):
        Z = rng.normal(size=(4, 4))
        axis = rng.normal(size=3)
        R = lorentz_spin(rep, rotation(axis, rng.uniform(0.1, 3.0)).w)
        res_H, res_U = rotation_covariance_check(Z, R)
        worst_rot = max(worst_rot, res_H, res_U)
    # at least one boost counterexample
    L = lorentz_spin(rep, boost([1.0, 0.0, 0.0], 0.9).w)
    boost_res = max(rotation_covariance_check(rng.normal(size=(4, 4)), L))
    ok = (worst_spec < 1e-8 and worst_margin < 1e-8 and worst_rt < 1e-8
          and worst_tet < 1e-8 and worst_rot < 1e-9 and boost_res > 1e-3)
    verdict(capsys, 9, "frame covariance", ok,
            f"spectra {worst_spec:.2e}, margin {worst_margin:.2e}, "
            f"roundtrip {worst_rt:.2e}, tetrad {worst_tet:.2e}, "
            f"rotation {worst_rot:.2e}, boost counterexample {boost_res:.2e}")


def test_criterion_10_orthogonality_structure(capsys):
    rng = np.random.default_rng(SEED + 7)
    worst = 0.0
    for _ in range(1000):
        q = random_current_quintuple(rng, h_scale=rng.uniform(0.1, 1.5))
        inv = current_invariants(q)
        worst = max(worst,
                    abs(inv.u_lo @ inv.e), abs(inv.v_lo @ inv.e),
                    abs(inv.w_lo @ ETA @ inv.u_lo),
                    abs(inv.w_lo @ ETA @ inv.v_lo))
    verdict(capsys, 10, "orthogonality structure", worst < 1e-9,
            f"max contraction {worst:.2e}")
