"""Command-line front end.

Subcommands: invariants, equiv, feasible, field, reproduce.  Reports are
emitted as canonical JSON (schema "cdbundle/1"): object keys sorted, floats
printed with 17 significant digits, complex entries as {"re": .., "im": ..}
— byte-identical output for identical inputs, and parse/re-serialize is a
fixed point.

Exit codes: 0 success (and verdict "equivalent" for equiv), 2 argument or
spec parse failure, 3 numeric degeneracy, 10 eigenvalues_match_only,
11 distinct; reproduce exits 1 when any assertion fails.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .equivalence import Verdict, full_report
from .errors import (
    DiscDomainError,
    MetricDegeneracyError,
    SingularLeadingTermError,
)
from .feasibility import permutation_analysis, rank2_feasibility, solve_triple
from .invariants import invariants_at_zero
from .kernels import kernel_taylor, spec_from_dict, spec_to_dict
from .oracle import FDConfig, curvature_eigenvalues_fd, oracle_invariants_at_zero
from .reproduce import SCENARIOS
from .series import DEFAULT_ORDER

SCHEMA = "cdbundle/1"

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NUMERIC = 3
EXIT_EIGS_ONLY = 10
EXIT_DISTINCT = 11

_NUMERIC_ERRORS = (
    MetricDegeneracyError,
    SingularLeadingTermError,
    DiscDomainError,
    np.linalg.LinAlgError,
)


def _fmt_float(x: float) -> str:
    if not np.isfinite(x):
        raise ValueError("non-finite value in report")
    return format(float(x), ".17g")


def canonical_json(obj, indent: int = 0) -> str:
    """Deterministic JSON: sorted keys, 17-significant-digit floats."""
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad}  {json.dumps(str(k))}: {canonical_json(obj[k], indent + 2).lstrip()}'
            for k in sorted(obj, key=str)
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            return "[]"
        items = [f"{pad}  {canonical_json(v, indent + 2).lstrip()}" for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return canonical_json({"im": float(obj.imag), "re": float(obj.real)}, indent)
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def matrix_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[{"re": float(v.real), "im": float(v.imag)} for v in row] for row in m]


def _load_spec(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return spec_from_dict(json.load(fh))


def _emit(report: dict) -> None:
    sys.stdout.write(canonical_json(report) + "\n")


def cmd_invariants(args) -> int:
    spec = _load_spec(args.kernel)
    cfg = FDConfig(step=args.fd_step)
    inv = invariants_at_zero(kernel_taylor(spec, args.order))
    oracle = oracle_invariants_at_zero(spec, cfg)
    residuals = {
        "curvature": float(np.abs(inv.curvature - oracle["curvature"]).max()),
        "d_zbar": float(np.abs(inv.d_zbar - oracle["d_zbar"]).max()),
        "d_zzbar": float(np.abs(inv.d_zzbar - oracle["d_zzbar"]).max()),
    }
    report = {
        "schema": SCHEMA,
        "command": "invariants",
        "inputs": {"kernel": spec_to_dict(spec), "order": args.order, "fd_step": args.fd_step},
        "outputs": {
            "curvature": matrix_json(inv.curvature),
            "d_zbar": matrix_json(inv.d_zbar),
            "d_zzbar": matrix_json(inv.d_zzbar),
            "curvature_eigenvalues": [float(v) for v in inv.curvature_eigenvalues()],
            "oracle_residuals": residuals,
        },
        "tolerances": {"oracle_cross_check": 1e-5},
        "notes": [],
    }
    if args.json:
        _emit(report)
    else:
        print(f"kernel: {json.dumps(spec_to_dict(spec))}")
        with np.printoptions(precision=12, suppress=False, linewidth=120):
            print("curvature(0):")
            print(np.array(inv.curvature))
            print("d_zbar(0):")
            print(np.array(inv.d_zbar))
            print("d_zzbar(0):")
            print(np.array(inv.d_zzbar))
        print("oracle residuals:", {k: f"{v:.3e}" for k, v in residuals.items()})
    return EXIT_OK


def cmd_equiv(args) -> int:
    left = _load_spec(args.left)
    right = _load_spec(args.right)
    report = full_report(left, right, order=args.order)
    doc = {
        "schema": SCHEMA,
        "command": "equiv",
        "inputs": {
            "left": spec_to_dict(left),
            "right": spec_to_dict(right),
            "order": args.order,
        },
        "verdict": report.verdict.value,
        "certificate": _jsonable(report.certificate),
        "witness": matrix_json(report.witness) if report.witness is not None else None,
        "witness_claims": list(report.witness_claims),
        "annotations": list(report.annotations),
        "tolerances": {"eig": 1e-7, "zero": 1e-9, "intertwine": 1e-8, "unitary": 1e-10},
    }
    _emit(doc)
    if report.verdict is Verdict.EQUIVALENT:
        return EXIT_OK
    if report.verdict is Verdict.EIGENVALUES_MATCH_ONLY:
        return EXIT_EIGS_ONLY
    return EXIT_DISTINCT


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return matrix_json(obj) if obj.ndim == 2 else [_jsonable(v) for v in obj]
    return obj


def _parse_tuple(text: str, n: int) -> tuple:
    parts = text.split(",")
    if len(parts) != n:
        raise ValueError(f"expected {n} comma-separated values, got {text!r}")
    return tuple(float(p) for p in parts)


def cmd_feasible(args) -> int:
    if args.rank2:
        if args.pair is None:
            raise ValueError("--rank2 requires --pair d1,d2")
        d1, d2 = _parse_tuple(args.pair, 2)
        sol = rank2_feasibility(d1, d2)
        doc = {
            "schema": SCHEMA,
            "command": "feasible",
            "inputs": {"pair": [d1, d2], "rank2": True},
            "feasible": sol is not None,
            "params": {"lambda": sol[0], "mu1_sq": sol[1]} if sol else None,
        }
        _emit(doc)
        return EXIT_OK
    if args.triple is None:
        raise ValueError("provide --triple d1,d2,d3 (or --pair with --rank2)")
    delta = _parse_tuple(args.triple, 3)
    res = solve_triple(delta)
    doc = {
        "schema": SCHEMA,
        "command": "feasible",
        "inputs": {"triple": list(delta), "permutations": bool(args.permutations)},
        "abc": list(res.abc),
        "checks": _jsonable(res.checks),
        "feasible": res.feasible,
        "params": {
            "lambda": res.params[0],
            "mu1_sq": res.params[1],
            "mu2_sq": res.params[2],
        }
        if res.params
        else None,
    }
    if args.permutations:
        analysis = permutation_analysis(delta)
        doc["permutations"] = {
            "".join(map(str, s)): {
                "ordered": list(r.delta),
                "feasible": r.feasible,
                "params": {
                    "lambda": r.params[0],
                    "mu1_sq": r.params[1],
                    "mu2_sq": r.params[2],
                }
                if r.params
                else None,
            }
            for s, r in analysis.results.items()
        }
        doc["feasible_sigmas"] = ["".join(map(str, s)) for s in analysis.feasible_sigmas]
        doc["respects_exclusions"] = analysis.respects_exclusions()
    _emit(doc)
    return EXIT_OK


def cmd_field(args) -> int:
    spec = _load_spec(args.kernel)
    if not 0.0 < args.radius < 1.0:
        raise ValueError(f"radius must lie in (0, 1), got {args.radius}")
    cfg = FDConfig(step=args.fd_step)
    if args.radius + cfg.reach("curv") >= 1.0:
        raise ValueError("radius leaves no room for the finite-difference stencil")
    axis = np.linspace(-args.radius, args.radius, args.grid)
    lines = ["x,y," + ",".join(f"eig{i + 1}" for i in range(spec.rank))]
    for y in axis:
        for x in axis:
            if np.hypot(x, y) > args.radius + 1e-12:
                continue
            eigs = curvature_eigenvalues_fd(spec, complex(x, y), cfg)
            row = [_fmt_float(x), _fmt_float(y)] + [_fmt_float(v) for v in eigs]
            lines.append(",".join(row))
    payload = "\n".join(lines) + "\n"
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(payload)
    print(f"wrote {len(lines) - 1} rows to {args.out}")
    return EXIT_OK


def cmd_reproduce(args) -> int:
    records, notes = SCENARIOS[args.case]()
    failed = 0
    for rec in records:
        mark = "PASS" if rec["ok"] else "FAIL"
        line = f"[{mark}] {rec['name']}"
        if rec["detail"]:
            line += f"  ({rec['detail']})"
        print(line)
        failed += 0 if rec["ok"] else 1
    for note in notes:
        print(f"note: {note}")
    print(f"{args.case}: {len(records) - failed}/{len(records)} assertions passed")
    return EXIT_OK if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cdbundle",
        description="Curvature invariants of kernel bundles on the unit disc",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="curvature invariants at 0 with oracle cross-check")
    p.add_argument("--kernel", required=True, help="kernel spec JSON file")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--fd-step", type=float, default=1e-4)
    p.add_argument("--json", action="store_true", help="emit the canonical JSON report")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("equiv", help="decide equivalence of two kernels")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("feasible", help="inverse eigenvalue feasibility")
    p.add_argument("--triple", help="d1,d2,d3")
    p.add_argument("--pair", help="d1,d2 (with --rank2)")
    p.add_argument("--rank2", action="store_true")
    p.add_argument("--permutations", action="store_true")
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("field", help="curvature eigenvalue field as CSV")
    p.add_argument("--kernel", required=True)
    p.add_argument("--grid", type=int, default=11)
    p.add_argument("--radius", type=float, default=0.5)
    p.add_argument("--fd-step", type=float, default=1e-4)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("reproduce", help="run a named counterexample scenario")
    p.add_argument("--case", required=True, choices=sorted(SCENARIOS))
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _NUMERIC_ERRORS as exc:
        # checked before ValueError: several numeric error types subclass it
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
