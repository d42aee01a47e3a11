"""Command-line front-end.

Reads tensor quintuples (single JSON objects or newline-delimited JSON
corpora), runs the feasibility / solve / round-trip / spectrum workflows,
generates random corpora, and applies frame transformations.

Exit codes: 0 success, 1 input error, 2 infeasible, 3 batch partial
failure.  All floats are emitted through json's shortest round-trip repr,
which preserves every bit (17 significant digits where needed).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .clifford import DIRAC_COMPLEX, MAJORANA_REAL, build_rep
from .errors import BispinorError, GenerationExhausted, Infeasible, InputError
from .factorization import (
    bilinears,
    enumerate_hermitian_factors,
    roundtrip_residual,
    solve_Z,
)
from .frames import (
    LOCAL,
    WORLD,
    LorentzTransform,
    TensorQuintuple,
    WorldMetric,
    apply_lorentz,
    boost,
    random_lorentz,
    rotation,
    tetrad_from_metric,
    world_to_local,
)
from .spectrum import build_M, spectrum_report

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_PARTIAL = 3

CORPUS_SCHEMA = "quintuple/1"
_GEN_ATTEMPT_CAP = 10_000


# ---------------------------------------------------------------------------
# input / output helpers

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _parse_rows(text: str):
    """Parse NDJSON (or a single JSON object) into a list of dicts,
    skipping schema header rows."""
    text = text.strip()
    if not text:
        return []
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise InputError(f"line {lineno}: invalid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise InputError(f"line {lineno}: expected a JSON object")
        if "schema" in obj:
            if obj["schema"] != CORPUS_SCHEMA:
                raise InputError(f"line {lineno}: unknown schema {obj['schema']!r}")
            continue
        rows.append((lineno, obj))
    return rows


def _to_local(d: dict) -> TensorQuintuple:
    """Parse a quintuple dict and bring it to the local frame.

    A world-frame row must carry a "metric" (16 row-major numbers); the
    tetrad built from it maps the row to local indices.
    """
    q = TensorQuintuple.from_dict(d)
    if q.frame == LOCAL:
        return q
    metric = d.get("metric")
    if metric is None:
        raise InputError('world-frame quintuple requires a "metric" field')
    g = np.asarray(metric, dtype=float).reshape(4, 4)
    return world_to_local(q, tetrad_from_metric(WorldMetric(g)))


def _single_quintuple(path: str) -> TensorQuintuple:
    rows = _parse_rows(_read_text(path))
    if len(rows) != 1:
        raise InputError(f"expected exactly one quintuple, got {len(rows)}")
    return _to_local(rows[0][1])


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj))
        return
    for key, val in obj.items():
        if isinstance(val, list) and val and isinstance(val[0], list):
            print(f"{key}:")
            for row in val:
                print("  " + "  ".join(f"{x:+.10e}" for x in row))
        elif isinstance(val, list):
            print(f"{key}: " + "  ".join(f"{x:+.10e}" if isinstance(x, float) else str(x) for x in val))
        else:
            print(f"{key}: {val}")


def _random_gauge(rep, seed: int) -> np.ndarray:
    """Deterministic random gauge matrix: orthogonal for the real kind,
    unitary for the complex kind."""
    rng = np.random.default_rng(seed)
    if rep.is_real:
        q, r = np.linalg.qr(rng.normal(size=(4, 4)))
        return q * np.sign(np.diag(r))
    z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


# ---------------------------------------------------------------------------
# commands

def cmd_check(args) -> int:
    q = _single_quintuple(args.input)
    rep = build_rep(args.rep)
    report = spectrum_report(q, rep)
    _emit(report.to_dict(), args.format)
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def cmd_spectrum(args) -> int:
    q = _single_quintuple(args.input)
    rep = build_rep(args.rep)
    report = spectrum_report(q, rep)
    d = report.to_dict()
    out = {k: d[k] for k in ("lambda_closed", "lambda_numeric", "kappa",
                             "closed_form_valid", "rank")}
    _emit(out, args.format)
    return EXIT_OK


def cmd_solve(args) -> int:
    q = _single_quintuple(args.input)
    rep = build_rep(args.rep)
    gauge = None if args.seed is None else _random_gauge(rep, args.seed)
    try:
        Z = solve_Z(q, rep, gauge=gauge)
    except Infeasible as exc:
        _emit({"feasible": False, "margin": exc.margin, "reason": str(exc)},
              args.format)
        return EXIT_INFEASIBLE
    factors = enumerate_hermitian_factors(build_M(q, rep))
    out = {
        "Z_real": Z.Z.real.tolist(),
        "Z_imag": Z.Z.imag.tolist(),
        "rep": rep.kind,
        "rank": factors.rank,
        "nonequivalent_factor_classes": factors.nonequivalent_count,
        "roundtrip_residual": roundtrip_residual(q, rep, gauge=gauge),
        "bilinears": bilinears(Z, rep).to_dict(),
    }
    _emit(out, args.format)
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    rows = _parse_rows(_read_text(args.input))
    rep = build_rep(args.rep)
    residuals, failures = [], []
    for lineno, d in rows:
        try:
            q = _to_local(d)
            res = roundtrip_residual(q, rep)
            residuals.append(res)
            if res >= 1e-8:
                failures.append({"line": lineno, "residual": res})
        except BispinorError as exc:
            failures.append({"line": lineno, "error": str(exc)})
    out = {
        "rows": len(rows),
        "failures": failures,
        "max_residual": max(residuals) if residuals else 0.0,
        "mean_residual": float(np.mean(residuals)) if residuals else 0.0,
    }
    _emit(out, args.format)
    if failures:
        return EXIT_PARTIAL
    return EXIT_OK


def _random_quintuple(rng) -> TensorQuintuple:
    j = rng.uniform(-1.0, 1.0, 4)
    j[0] = 1.5 + rng.uniform(0.0, 1.0)
    return TensorQuintuple.from_h6(
        m=rng.uniform(-1.0, 1.0), j=j, s=rng.uniform(-1.0, 1.0, 4),
        h6=rng.uniform(-1.0, 1.0, 6), n=rng.uniform(-1.0, 1.0),
    )


def cmd_gen(args) -> int:
    if args.count < 0:
        raise InputError("--count must be nonnegative")
    rep = build_rep(args.rep)
    rng = np.random.default_rng(args.seed)
    lines = [json.dumps({"schema": CORPUS_SCHEMA, "seed": args.seed,
                         "count": args.count,
                         "feasible_only": bool(args.feasible_only),
                         "margin_min": args.margin_min})]
    for _ in range(args.count):
        for _attempt in range(_GEN_ATTEMPT_CAP):
            q = _random_quintuple(rng)
            if not args.feasible_only:
                break
            if spectrum_report(q, rep).margin >= args.margin_min:
                break
        else:
            raise GenerationExhausted(
                f"no sample with margin >= {args.margin_min} "
                f"in {_GEN_ATTEMPT_CAP} attempts")
        lines.append(json.dumps(q.to_dict()))
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def _build_transform(args) -> LorentzTransform:
    if args.boost is not None:
        direction = np.array([float(x) for x in args.boost.split(",")])
        return boost(direction, args.rapidity)
    if args.axis is not None:
        axis = np.array([float(x) for x in args.axis.split(",")])
        return rotation(axis, args.angle)
    if args.seed is not None:
        return random_lorentz(args.seed)
    return LorentzTransform(np.eye(4))


def cmd_transform(args) -> int:
    rows = _parse_rows(_read_text(args.input))
    lt = _build_transform(args)
    out_lines = [json.dumps({"schema": CORPUS_SCHEMA, "seed": args.seed})]
    for _lineno, d in rows:
        q = _to_local(d)
        out_lines.append(json.dumps(apply_lorentz(q, lt).to_dict()))
    text = "\n".join(out_lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing

def _add_common(p: argparse.ArgumentParser, with_input: bool = True) -> None:
    p.add_argument("--rep", choices=[MAJORANA_REAL, DIRAC_COMPLEX],
                   default=MAJORANA_REAL)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--seed", type=int, default=None)
    if with_input:
        p.add_argument("input", nargs="?", default="-",
                       help="input file or - for stdin")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bispinor",
        description="tensor-quintuple / bispinor-matrix correspondence toolkit",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="feasibility report for one quintuple")
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("spectrum", help="closed-form and numeric spectrum")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("solve", help="factor one quintuple into Z")
    _add_common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("roundtrip", help="batch round-trip residuals")
    _add_common(p)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("gen", help="generate a random corpus")
    _add_common(p, with_input=False)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--feasible-only", action="store_true")
    p.add_argument("--margin-min", type=float, default=0.0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_gen, seed=0)

    p = sub.add_parser("transform", help="apply a Lorentz transform to a corpus")
    _add_common(p)
    p.add_argument("--boost", help="boost direction nx,ny,nz")
    p.add_argument("--rapidity", type=float, default=0.5)
    p.add_argument("--axis", help="rotation axis x,y,z")
    p.add_argument("--angle", type=float, default=0.5)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_transform)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except BispinorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
