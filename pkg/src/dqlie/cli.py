"""Command-line entry point: ``dqlie <command> ...``.

Exit codes: 0 success, 1 mathematical failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .duflo import duflo_map, duflo_series, verify_duflo_multiplicative
from .invariants import invariant_basis
from .lie_core import (
    LieAlgebra,
    LieParseError,
    UnvalidatedAlgebraError,
    catalog,
    is_semisimple,
    jacobi_defect,
    parse_lie_algebra,
    unimodularity_defect,
)
from .star import gutt_star, kontsevich_star, verify_invariant_star
from .symalg import PolyParseError, parse_poly
from .wheels import estimate_weight, wheel

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def rat(c: Fraction) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def fmt_float(x: float) -> str:
    return format(x, ".17g")


@dataclass
class RunReport:
    command: str
    algebra: str | None
    parameters: dict[str, Any]
    verdict: str
    details: list[dict[str, Any]] = field(default_factory=list)
    tool_version: str = __version__
    seed: int | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"


def load_algebra(source: str) -> tuple[LieAlgebra, bool]:
    """Catalog name or path to a Lie file; returns (algebra, validated?)."""
    path = Path(source)
    if path.is_file():
        try:
            L = parse_lie_algebra(path.read_text(encoding="utf-8"), name=source)
        except LieParseError as exc:
            raise InputError(f"{source}: {exc}") from exc
        try:
            return L.validate(), True
        except UnvalidatedAlgebraError:
            return L, False
    try:
        return catalog(source), True
    except (KeyError, ValueError) as exc:
        raise InputError(f"unknown algebra {source!r} (not a file or catalog name)") from exc


def _validated(source: str) -> LieAlgebra:
    L, ok = load_algebra(source)
    if not ok:
        raise InputError(f"{source}: structure constants violate the Jacobi identity")
    return L


def cmd_check(args) -> tuple[RunReport, list[str], int]:
    path = Path(args.path)
    if not path.is_file():
        raise InputError(f"cannot read {args.path}")
    try:
        L = parse_lie_algebra(path.read_text(encoding="utf-8"), name=args.path)
    except LieParseError as exc:
        raise InputError(f"{args.path}: {exc}") from exc
    defect = jacobi_defect(L)
    unimod = unimodularity_defect(L)
    details: list[dict[str, Any]] = [
        {"jacobi_defect": [
            {"triple": [L.basis[i] for i in t], "defect": [rat(c) for c in v]} for t, v in sorted(defect.items())
        ]},
        {"unimodularity_defect": [rat(c) for c in unimod]},
    ]
    lines = [f"algebra: {args.path} (dim {L.dim})"]
    if defect:
        lines.append(f"jacobi: FAIL on {len(defect)} triple(s)")
        for t, v in sorted(defect.items()):
            lines.append(f"  [{', '.join(L.basis[i] for i in t)}] defect = ({', '.join(rat(c) for c in v)})")
        report = RunReport("check", args.path, {}, "fail", details, seed=args.seed)
        return report, lines, EXIT_FAIL
    semisimple = is_semisimple(L.validate())
    unimodular = not any(unimod)
    details.append({"unimodular": unimodular, "semisimple": semisimple})
    lines.append("jacobi: ok")
    lines.append(f"unimodular: {str(unimodular).lower()}" + ("" if unimodular else f" defect = ({', '.join(rat(c) for c in unimod)})"))
    lines.append(f"semisimple: {str(semisimple).lower()}")
    return RunReport("check", args.path, {}, "pass", details, seed=args.seed), lines, EXIT_OK


def cmd_invariants(args):
    L = _validated(args.algebra)
    basis = invariant_basis(L, args.degree)
    lines = [str(f) for f in basis]
    report = RunReport(
        "invariants", args.algebra, {"degree": args.degree}, "pass", [{"basis": lines}], seed=args.seed
    )
    return report, lines, EXIT_OK


def _parse(L, text: str, flag: str):
    try:
        return parse_poly(L, text)
    except PolyParseError as exc:
        raise InputError(f"{flag}: {exc}") from exc


def cmd_star(args):
    L = _validated(args.algebra)
    f, g = _parse(L, args.f, "--f"), _parse(L, args.g, "--g")
    prod = gutt_star(f, g) if args.method == "gutt" else kontsevich_star(f, g)
    params = {"f": args.f, "g": args.g, "method": args.method}
    return RunReport("star", args.algebra, params, "pass", [{"result": str(prod)}], seed=args.seed), [str(prod)], EXIT_OK


def cmd_duflo(args):
    L = _validated(args.algebra)
    f = _parse(L, args.f, "--f")
    u = duflo_map(L, f)
    return RunReport("duflo", args.algebra, {"f": args.f}, "pass", [{"result": str(u)}], seed=args.seed), [str(u)], EXIT_OK


def cmd_verify(args):
    L = _validated(args.algebra)
    if args.kind == "star":
        rep = verify_invariant_star(L, args.max_degree)
    else:
        rep = verify_duflo_multiplicative(L, args.max_degree)
    verdict = "pass" if rep.passed else "fail"
    lines = [
        f"verify {args.kind} on {args.algebra} up to degree {args.max_degree}: {verdict.upper()}",
        f"invariant basis sizes: {', '.join(f'{d}:{n}' for d, n in rep.basis_sizes.items())}",
        f"pairs checked: {rep.pairs_checked}",
    ]
    if args.kind == "duflo":
        lines.append(f"centrality checks: {rep.central_checked}")
    if rep.failures:
        first = rep.failures[0]
        lines.append("first counterexample: " + "; ".join(f"{k}={v}" for k, v in first.items()))
    report = RunReport(
        "verify", args.algebra, {"kind": args.kind, "max_degree": args.max_degree}, verdict, [rep.as_dict()], seed=args.seed
    )
    return report, lines, EXIT_OK if rep.passed else EXIT_FAIL


def cmd_alpha(args):
    if args.order < 2 or args.order % 2:
        raise InputError("--order must be a positive even integer")
    coeffs = duflo_series(args.order // 2)
    lines = [f"alpha[{i}] = {v}" for i, v in coeffs.items()]
    details = [{"index": i, "value": rat(v)} for i, v in coeffs.items()]
    return RunReport("alpha", None, {"order": args.order}, "pass", details, seed=args.seed), lines, EXIT_OK


def cmd_wheel(args):
    if args.m < 2:
        raise InputError("--m must be at least 2")
    if args.batches < 8 or args.samples < args.batches:
        raise InputError("need --samples >= --batches >= 8")
    seed = 0 if args.seed is None else args.seed
    est = estimate_weight(wheel(args.m, args.reversed), args.samples, args.batches, seed, workers=args.workers)
    d = est.as_dict()
    lines = [
        f"graph: {d['graph']}",
        f"mean: {fmt_float(est.mean)}",
        f"std_error: {fmt_float(est.std_error)}",
        f"median_of_means: {fmt_float(est.median_of_means)}",
        f"samples: {est.samples}",
        f"batches: {est.batches}",
        f"calibration: {d['calibration']}",
    ]
    params = {"m": args.m, "reversed": args.reversed, "samples": args.samples, "batches": args.batches}
    for k in ("mean", "std_error", "median_of_means"):
        d[k] = fmt_float(d[k])
    return RunReport("wheel", None, params, "estimate", [d], seed=seed), lines, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="PATH", help="also write the JSON report here")
    common.add_argument("--seed", type=int, default=None, help="random seed (u64)")

    p = argparse.ArgumentParser(prog="dqlie", description="Exact Duflo/star-product workbench and wheel weights.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="validate a Lie file")
    s.add_argument("path")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("invariants", parents=[common], help="basis of invariant polynomials of one degree")
    s.add_argument("algebra")
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("star", parents=[common], help="star product of two polynomials")
    s.add_argument("algebra")
    s.add_argument("--f", required=True)
    s.add_argument("--g", required=True)
    s.add_argument("--method", choices=("gutt", "kontsevich"), default="kontsevich")
    s.set_defaults(func=cmd_star)

    s = sub.add_parser("duflo", parents=[common], help="Duflo map of a polynomial into U(g)")
    s.add_argument("algebra")
    s.add_argument("--f", required=True)
    s.set_defaults(func=cmd_duflo)

    s = sub.add_parser("verify", parents=[common], help="exhaustive check over invariant basis pairs")
    s.add_argument("algebra")
    s.add_argument("--kind", choices=("duflo", "star"), required=True)
    s.add_argument("--max-degree", type=int, required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("alpha", parents=[common], help="Duflo coefficients alpha_2 .. alpha_order")
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(func=cmd_alpha)

    s = sub.add_parser("wheel", parents=[common], help="Monte-Carlo wheel weight")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--reversed", action="store_true")
    s.add_argument("--samples", type=int, default=1_000_000)
    s.add_argument("--batches", type=int, default=100)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_wheel)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        report, lines, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for line in lines:
        print(line)
    if args.report:
        Path(args.report).write_text(report.to_json(), encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
