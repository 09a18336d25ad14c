"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 budget or cap exceeded, 4 assertion
violation. Output is deterministic for fixed inputs and flags.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .cayley import (
    DEFAULT_EXACT_CAP,
    CapExceededError,
    CayleyGraph,
    css_check,
    is_triangle_free,
    scan_css,
    shortest_cycle,
)
from .heights import (
    DEFAULT_POINT_BUDGET,
    BudgetExceededError,
    _line_fast_path,
    gap_scan,
    height,
    line_bound_certificates,
    line_height_fast,
    line_height_table,
    spectrum,
)
from .modular import canonicalize, primes_up_to
from .report import FORMATS, OutputRecord, _cell, render

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_LIMIT = 3
EXIT_VIOLATION = 4

PAPER_RANGE_PRIMES = (11, 13, 17, 19, 23, 29)


class InputError(Exception):
    pass


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise InputError("expected at least one integer")
    return values


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _exact_cap() -> int:
    raw = os.environ.get("PROJHEIGHT_EXACT_CAP")
    if raw is None:
        return DEFAULT_EXACT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"PROJHEIGHT_EXACT_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise InputError("PROJHEIGHT_EXACT_CAP must be positive")
    return cap


def _join(values, sep: str = ":") -> str:
    return sep.join(str(v) for v in values)


def cmd_height(args: argparse.Namespace) -> OutputRecord:
    coords = _parse_int_list(args.a)
    point = canonicalize(coords, args.p)
    nonzero = sum(1 for c in point.coords if c)
    bound_average = nonzero * point.p // 2
    if point.d == 2 and point.coords[0] == 1 and point.coords[1] != 0:
        record = line_height_fast(point.coords[1], point.modulus)
        certs = dict(line_bound_certificates(point.coords[1], point.modulus))
    else:
        record = height(point)
        certs = {}
    row = {
        "p": point.p,
        "point": _join(point.coords),
        "d_star": nonzero,
        "height": record.height,
        "argmin_k": record.argmin_k,
        "method": record.method,
        "rule": record.rule,
        "bound_average": bound_average,
        "bound_direct": certs.get("direct"),
        "bound_complement": certs.get("complement"),
    }
    return OutputRecord(
        command="height",
        parameters={"p": args.p, "a": args.a},
        columns=tuple(row),
        rows=(row,),
        summary={"height": record.height, "argmin_k": record.argmin_k},
    )


def cmd_table(args: argparse.Namespace) -> OutputRecord:
    if args.paper_range:
        primes = list(PAPER_RANGE_PRIMES)
        parameters = {"paper_range": True}
    else:
        if args.pmin is None or args.pmax is None:
            raise InputError("either --paper-range or both --pmin and --pmax are required")
        if args.pmin > args.pmax:
            raise InputError("--pmin must not exceed --pmax")
        primes = [p for p in primes_up_to(args.pmax) if p >= args.pmin and p > 2]
        parameters = {"pmin": args.pmin, "pmax": args.pmax}
    rows = []
    for p in primes:
        if p < 5:
            continue  # a ranges over [2, p-2], empty below 5
        heights_row, argmins = line_height_table(p)
        for a in range(2, p - 1):
            fast = _line_fast_path(a, p)
            rows.append(
                {
                    "p": p,
                    "a": a,
                    "height": int(heights_row[a - 1]),
                    "argmin_k": int(argmins[a - 1]),
                    "method": "brute" if fast is None else "formula",
                }
            )
    return OutputRecord(
        command="table",
        parameters=parameters,
        columns=("p", "a", "height", "argmin_k", "method"),
        rows=tuple(rows),
        summary={"rows": len(rows), "primes": len([p for p in primes if p >= 5])},
    )


def cmd_spectrum(args: argparse.Namespace) -> OutputRecord:
    sp = spectrum(args.p, args.d, budget=args.budget)
    rows = tuple(
        {"p": sp.p, "d": sp.d, "value": v, "count": sp.count_per_value[v]} for v in sp.values
    )
    summary: dict[str, object] = {
        "max_height": sp.max_height,
        "distinct_values": len(sp.values),
        "gaps": ";".join(f"({lo},{hi})" for lo, hi in sp.gaps),
    }
    if args.check_bounds:
        bounds = sp.bounds_check()
        summary["bound_lower"] = bounds.lower
        summary["bound_upper"] = bounds.upper
        summary["bound_ok"] = bounds.ok
    return OutputRecord(
        command="spectrum",
        parameters={"p": args.p, "d": args.d, "check_bounds": args.check_bounds},
        columns=("p", "d", "value", "count"),
        rows=rows,
        summary=summary,
    )


def cmd_gaps(args: argparse.Namespace) -> OutputRecord:
    if args.pmin > args.pmax:
        raise InputError("--pmin must not exceed --pmax")
    rows = []
    for p in primes_up_to(args.pmax):
        if p < args.pmin or p == 2:
            continue
        report = gap_scan(p, args.r, args.c)
        rows.append(
            {
                "p": p,
                "r": report.r,
                "c": str(report.c),
                "window_lo": str(report.lower),
                "window_hi": str(report.upper),
                "empty": report.empty,
                "inside": _join(report.inside, ";"),
            }
        )
    return OutputRecord(
        command="gaps",
        parameters={"pmin": args.pmin, "pmax": args.pmax, "r": args.r, "c": str(args.c)},
        columns=("p", "r", "c", "window_lo", "window_hi", "empty", "inside"),
        rows=tuple(rows),
        summary={
            "primes": len(rows),
            "windows_all_empty": all(r["empty"] for r in rows) if rows else True,
        },
    )


def cmd_cayley(args: argparse.Namespace) -> OutputRecord:
    graph = CayleyGraph(args.p, _parse_int_list(args.A))
    report = css_check(graph, exact=args.exact, cap=_exact_cap())
    cert = is_triangle_free(graph)
    row = {
        "p": graph.p,
        "A": _join(graph.A),
        "d": graph.d,
        "triangle_free": report.triangle_free,
        "witness": _join(cert.witness, ";") if cert.witness else "",
        "gamma": report.gamma,
        "beta_upper": report.beta_upper,
        "witness_k": report.witness_k,
        "beta_exact": report.beta_exact,
        "shortest_cycle": shortest_cycle(graph) if args.girth else None,
        "css_margin": str(report.css_margin),
    }
    summary: dict[str, object] = {
        "triangle_free": report.triangle_free,
        "beta_upper": report.beta_upper,
    }
    if args.exact:
        summary["beta_exact"] = report.beta_exact
    if args.css:
        summary["violations"] = len(report.violations)
    return OutputRecord(
        command="cayley",
        parameters={
            "p": args.p,
            "A": args.A,
            "exact": args.exact,
            "css": args.css,
            "girth": args.girth,
        },
        columns=tuple(row),
        rows=(row,),
        summary=summary,
    )


def cmd_scan(args: argparse.Namespace) -> OutputRecord:
    report = scan_css(args.pmax, args.d, exact=args.exact, cap=_exact_cap(), budget=args.budget)
    rows = tuple(
        {
            "p": r.p,
            "A": _join(r.A),
            "d": r.d,
            "triangle_free": r.triangle_free,
            "gamma": r.gamma,
            "beta_upper": r.beta_upper,
            "witness_k": r.witness_k,
            "beta_exact": r.beta_exact,
            "shortest_cycle": r.shortest_cycle,
            "css_margin": str(r.css_margin),
            "critical_window": r.in_critical_window,
            "violations": ";".join(r.violations),
        }
        for r in report.rows
    )
    return OutputRecord(
        command="scan",
        parameters={"pmax": args.pmax, "d": args.d, "exact": args.exact},
        columns=(
            "p",
            "A",
            "d",
            "triangle_free",
            "gamma",
            "beta_upper",
            "witness_k",
            "beta_exact",
            "shortest_cycle",
            "css_margin",
            "critical_window",
            "violations",
        ),
        rows=rows,
        summary={
            "instances": report.instances,
            "triangle_free": report.triangle_free_count,
            "violations": report.violation_count,
        },
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="projheight",
        description="Heights on finite projective space and feedback arc sets of Cayley digraphs.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=FORMATS, default="text", help="output format")

    p_height = sub.add_parser("height", help="height of one projective point")
    p_height.add_argument("-p", type=int, required=True, help="prime modulus")
    p_height.add_argument("-a", required=True, help="comma-separated coordinates")
    add_format(p_height)
    p_height.set_defaults(func=cmd_height)

    p_table = sub.add_parser("table", help="heights of <1,a> for a in [2, p-2] per prime")
    p_table.add_argument("--pmin", type=int, help="smallest prime")
    p_table.add_argument("--pmax", type=int, help="largest prime")
    p_table.add_argument(
        "--paper-range",
        action="store_true",
        help="use the preset primes 11, 13, 17, 19, 23, 29",
    )
    add_format(p_table)
    p_table.set_defaults(func=cmd_table)

    p_spectrum = sub.add_parser("spectrum", help="all heights achieved on P^(d-1)(F_p)")
    p_spectrum.add_argument("-p", type=int, required=True, help="prime modulus")
    p_spectrum.add_argument("-d", "--d", type=int, required=True, help="number of coordinates")
    p_spectrum.add_argument(
        "--check-bounds", action="store_true", help="compare the maximum to its closed-form window"
    )
    p_spectrum.add_argument(
        "--budget", type=int, default=DEFAULT_POINT_BUDGET, help="point enumeration budget"
    )
    add_format(p_spectrum)
    p_spectrum.set_defaults(func=cmd_spectrum)

    p_gaps = sub.add_parser("gaps", help="rational window scan over line heights")
    p_gaps.add_argument("--pmin", type=int, default=3, help="smallest prime")
    p_gaps.add_argument("--pmax", type=int, required=True, help="largest prime")
    p_gaps.add_argument("--r", type=int, default=1, help="window index r")
    p_gaps.add_argument(
        "--c", type=_parse_fraction, default=Fraction(0), help="window shrink constant (rational)"
    )
    add_format(p_gaps)
    p_gaps.set_defaults(func=cmd_gaps)

    p_cayley = sub.add_parser("cayley", help="feedback arc bounds for one Cayley digraph")
    p_cayley.add_argument("-p", type=int, required=True, help="prime modulus")
    p_cayley.add_argument("-A", required=True, help="comma-separated connection set")
    p_cayley.add_argument("--exact", action="store_true", help="compute exact beta (capped)")
    p_cayley.add_argument("--css", action="store_true", help="evaluate the CSS assertions")
    p_cayley.add_argument("--girth", action="store_true", help="report the shortest cycle length")
    add_format(p_cayley)
    p_cayley.set_defaults(func=cmd_cayley)

    p_scan = sub.add_parser("scan", help="audit all connection sets up to scalar equivalence")
    p_scan.add_argument("--pmax", type=int, required=True, help="largest prime")
    p_scan.add_argument("-d", "--d", type=int, required=True, help="connection set size")
    p_scan.add_argument("--exact", action="store_true", help="compute exact beta per instance")
    p_scan.add_argument(
        "--budget", type=int, default=DEFAULT_POINT_BUDGET, help="instance enumeration budget"
    )
    p_scan.add_argument("--out", help="write the full report to this path")
    add_format(p_scan)
    p_scan.set_defaults(func=cmd_scan)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        record = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceededError, CapExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    rendered = render(record, args.format)
    out_path = getattr(args, "out", None)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(rendered)
        for key in sorted(record.summary):
            print(f"{key}: {_cell(record.summary[key])}")
        print(f"report written to {out_path}")
    else:
        sys.stdout.write(rendered)
    violations = record.summary.get("violations", 0)
    return EXIT_VIOLATION if violations else EXIT_OK
