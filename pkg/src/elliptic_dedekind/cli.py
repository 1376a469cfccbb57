"""Command line front end.

Subcommands: ``sum`` (one exact value), ``table`` (reproduce a value
table), ``scan`` (divisibility scan over a rectangle), ``verify`` (identity
suites), ``elliptic`` (one lattice-sum evaluation).  Exit codes: 0 success,
1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import exact, lattice, scan as scan_mod, tables, verify as verify_mod
from .errors import DomainError
from .pairs import CoprimePair, Route, SumKind, SumRecord
from .special import build_context


def _parse_tau(text: str) -> complex:
    try:
        re_part, im_part = text.split(",")
        return complex(float(re_part), float(im_part))
    except ValueError as exc:
        raise DomainError(f"tau must be given as 're,im', got {text!r}") from exc


def _write_output(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _human_value(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _cmd_sum(args) -> int:
    if args.kind == "s":
        value = exact.dedekind_sum(args.a, args.b)
    elif args.kind == "S":
        value = Fraction(exact.hardy_berndt(args.a, args.b))
    elif args.kind == "Q":
        value = exact.q_value(CoprimePair(args.a, args.b), Route(args.route))
    else:
        value = Fraction(exact.m_value(CoprimePair(args.a, args.b)))
    print(_human_value(value))
    return 0


def _cmd_table(args) -> int:
    kind = tables.TableKind(args.which)
    if args.rows or args.cols:
        default = tables.default_spec(kind)
        rows = tuple(int(x) for x in args.rows.split(",")) if args.rows else default.rows
        cols = tuple(int(x) for x in args.cols.split(",")) if args.cols else default.cols
        spec = tables.TableSpec(kind, rows, cols)
    else:
        spec = tables.default_spec(kind)
    grid = tables.render_table(spec)
    if args.format == "text":
        text = tables.format_text(spec, grid)
    elif args.format == "csv":
        text = tables.format_csv(spec, grid)
    else:
        text = tables.format_json(spec, grid)
    _write_output(text, args.out)
    return 0


def _cmd_scan(args) -> int:
    law = scan_mod.ScanLaw(args.law)
    report = scan_mod.conjecture_scan(
        (args.a_min, args.a_max), (args.b_min, args.b_max), law, workers=args.workers
    )
    if args.format == "csv":
        text = scan_mod.format_csv(report)
    else:
        text = json.dumps(report.as_dict(), indent=2) + "\n"
    _write_output(text, args.out)
    if args.out:
        print(
            f"checked {report.checked} pairs, {len(report.violations)} violations, "
            f"{report.elapsed_ms} ms"
        )
    return 0


def _cmd_verify(args) -> int:
    scope = verify_mod.VerifyScope(args.scope)
    taus = [_parse_tau(t) for t in args.tau or []]
    if scope is verify_mod.VerifyScope.FULL and not taus:
        taus = [complex(0.0, 1.0)]
    report = verify_mod.verify_suite(scope, args.bound, taus, tol=args.tol)
    sys.stdout.write(verify_mod.format_report(report))
    return 0 if report.passed else 1


def _cmd_elliptic(args) -> int:
    pair = CoprimePair(args.a, args.b)
    ctx = build_context(_parse_tau(args.tau), args.trunc_tol)
    result = lattice.apostol_sum(args.order, pair, ctx)
    payload = result.as_dict()
    if args.order == 0 and pair.in_U_odd:
        try:
            extraction = lattice.rational_extract(pair, ctx)
        except ArithmeticError:
            pass
        else:
            payload["q_estimate"] = {
                "re": extraction.q_estimate.real,
                "im": extraction.q_estimate.imag,
            }
            payload["q_exact"] = f"{extraction.q_exact.numerator}/{extraction.q_exact.denominator}"
            payload["abs_error"] = extraction.abs_error
    print(json.dumps(payload, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elliptic-dedekind",
        description="Exact and numerical evaluation of elliptic Dedekind sums.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sum = sub.add_parser("sum", help="print one exact value")
    p_sum.add_argument("--a", type=int, required=True)
    p_sum.add_argument("--b", type=int, required=True)
    p_sum.add_argument("--kind", choices=["s", "S", "Q", "M"], required=True)
    p_sum.add_argument("--route", choices=["main", "rao", "euclid"], default="main")
    p_sum.set_defaults(func=_cmd_sum)

    p_table = sub.add_parser("table", help="reproduce a value table")
    p_table.add_argument("--which", choices=["t1", "t2", "t3"], required=True)
    p_table.add_argument("--rows", help="comma separated row labels")
    p_table.add_argument("--cols", help="comma separated column labels")
    p_table.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p_table.add_argument("--out")
    p_table.set_defaults(func=_cmd_table)

    p_scan = sub.add_parser("scan", help="divisibility scan of b*Q(a;b)")
    p_scan.add_argument("--law", choices=["mod4", "mod12"], required=True)
    p_scan.add_argument("--a-max", type=int, required=True)
    p_scan.add_argument("--b-max", type=int, required=True)
    p_scan.add_argument("--a-min", type=int, default=1)
    p_scan.add_argument("--b-min", type=int, default=1)
    p_scan.add_argument("--workers", type=int, default=None)
    p_scan.add_argument("--format", choices=["json", "csv"], default="json")
    p_scan.add_argument("--out")
    p_scan.set_defaults(func=_cmd_scan)

    p_verify = sub.add_parser("verify", help="run the identity suites")
    p_verify.add_argument("--scope", choices=["exact", "full"], default="exact")
    p_verify.add_argument("--bound", type=int, default=200)
    p_verify.add_argument("--tau", action="append", help="re,im (repeatable)")
    p_verify.add_argument("--tol", type=float, default=verify_mod.CROSS_ENGINE_TOL)
    p_verify.set_defaults(func=_cmd_verify)

    p_ell = sub.add_parser("elliptic", help="evaluate one lattice sum")
    p_ell.add_argument("--a", type=int, required=True)
    p_ell.add_argument("--b", type=int, required=True)
    p_ell.add_argument("--tau", required=True, help="re,im")
    p_ell.add_argument("--order", type=int, default=0)
    p_ell.add_argument("--trunc-tol", type=float, default=1e-12)
    p_ell.set_defaults(func=_cmd_elliptic)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
