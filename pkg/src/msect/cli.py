"""Command-line entry point: ``msect <subcommand> ...``.

Exit status is 0 on success, 2 on bad input, 3 when an internal consistency
check fails (method disagreement, violated counting identity) and 1 when
``verify`` finds a failing invariant.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from msect.census import census, enumerate_field, schanuel_fit
from msect.chebyshev import chebyshev
from msect.density import (
    METHODS,
    NoFitError,
    density_grid,
    fit_records,
    parse_grid,
    plot_fit,
    read_density_csv,
    write_density_csv,
)
from msect.errors import InconsistencyError
from msect.polynomials import clear_denominators, format_poly, parse_poly, poly_to_json, quad_roots, rational_roots
from msect.quadfield import format_elem, parse_elem, parse_field
from msect.rationals import format_rational, parse_rational
from msect.sectability import decide_sectable, is_power_of_two, power_of_two_witness, witness_report
from msect.verify import DEFAULT_SEED, run_suite

QUAD_DENSITY_LIMIT = 100


def _default_shards() -> int:
    raw = os.environ.get("MSECT_SHARDS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise SystemExit(f"MSECT_SHARDS must be an integer, got {raw!r}")
    return max(1, n)


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_decide(args) -> int:
    field = parse_field(args.field)
    a = parse_elem(args.a, field if field.d is not None else None)
    _emit_json(decide_sectable(a, args.m).to_dict())
    return 0


def cmd_chebyshev(args) -> int:
    pair = chebyshev(args.m)
    poly = pair.T if args.kind == "T" else pair.U
    if args.format == "json":
        print(poly_to_json(poly))
    else:
        print(format_poly(poly))
    return 0


def cmd_roots(args) -> int:
    field = parse_field(args.field)
    p = parse_poly(args.poly, field.d)
    if field.d is None:
        roots = sorted(rational_roots(clear_denominators(p)[0]))
    else:
        roots = sorted(quad_roots(p, field.d))
    _emit_json({"poly": format_poly(p), "field": field.tag, "roots": [format_elem(r) for r in roots]})
    return 0


def cmd_census(args) -> int:
    field = parse_field(args.field)
    bounds = parse_grid(args.grid) if args.grid else [parse_rational(args.B)]
    print("field,B,total,in_unit")
    for b in bounds:
        row = census(field, b, args.shards)
        print(f"{field.tag},{format_rational(b)},{row.total},{row.in_unit}")
    return 0


def cmd_enumerate(args) -> int:
    field = parse_field(args.field)
    elems = enumerate_field(field, parse_rational(args.B), args.shards)
    if args.emit == "count":
        print(len(elems))
    else:
        out = sys.stdout
        for x in elems:
            out.write(format_elem(x) + "\n")
    return 0


def cmd_density(args) -> int:
    field = parse_field(args.field)
    grid = parse_grid(args.grid) if args.grid else [parse_rational(args.B)]
    if field.d is not None and max(grid) > QUAD_DENSITY_LIMIT and not args.allow_large:
        raise ValueError(f"quadratic-field density is limited to B <= {QUAD_DENSITY_LIMIT}; pass --allow-large")
    records = density_grid(field, args.m, grid, args.method, args.shards)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_density_csv(records, fh)
    else:
        write_density_csv(records, sys.stdout)
    return 0


def cmd_fit(args) -> int:
    records = read_density_csv(args.input)
    try:
        fit = fit_records(records)
    except NoFitError as exc:
        _emit_json({"error": str(exc), "points_used": 0})
        return 1
    _emit_json(fit.to_dict())
    if args.plot:
        plot_fit(fit, args.plot)
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.seed, quick=args.quick)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} invariants hold (seed {args.seed})")
    return 1 if failed else 0


def cmd_witness(args) -> int:
    if is_power_of_two(args.m):
        a = parse_rational(args.a) if args.a else Fraction(1, 2)
        chain = power_of_two_witness(args.m, a)
        _emit_json({"m": args.m, "a": format_rational(a), "chain": chain})
    else:
        _emit_json(witness_report(args.m))
    return 0


def cmd_schanuel(args) -> int:
    field = parse_field(args.field)
    bounds = [parse_rational(b) for b in args.B.split(",")]
    fit = schanuel_fit(field, bounds, args.shards)
    _emit_json(
        {
            "field": field.tag,
            "samples": [[format_rational(b), t] for b, t in fit.samples],
            "s_hat": fit.s_hat,
            "drift": fit.drift,
            "matched_constant": fit.matched_constant,
            "relative_error": fit.relative_error,
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msect", description="Exact m-sectability and height-density tools.")
    sub = parser.add_subparsers(dest="command", required=True)
    shards = _default_shards()

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("decide", cmd_decide, "decide whether the angle with cosine a is m-sectable")
    p.add_argument("--a", required=True, help="cosine, e.g. 1/2 or 1/2*sqrt(2)")
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--field", default="Q")

    p = add("chebyshev", cmd_chebyshev, "print T_m or U_m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kind", choices=["T", "U"], default="T")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = add("roots", cmd_roots, "roots of a polynomial in Q or Q(sqrt d)")
    p.add_argument("--poly", required=True, help='e.g. "4*x^3-3*x-1/2"')
    p.add_argument("--field", default="Q")

    for name, fn, text in (
        ("census", cmd_census, "count elements of bounded height"),
        ("enumerate", cmd_enumerate, "list elements of bounded height"),
    ):
        p = add(name, fn, text)
        p.add_argument("--field", default="Q")
        p.add_argument("--B", required=name == "enumerate")
        p.add_argument("--shards", type=_positive_int, default=shards)
        if name == "census":
            p.add_argument("--grid", help="start:end:xfactor")
        else:
            p.add_argument("--emit", choices=["elements", "count"], default="elements")

    p = add("density", cmd_density, "density of m-sectable cosines as CSV")
    p.add_argument("--field", default="Q")
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--grid", help="start:end:xfactor or a comma list")
    p.add_argument("--B")
    p.add_argument("--method", choices=[*METHODS, "both"], default="forward-image")
    p.add_argument("--out")
    p.add_argument("--shards", type=_positive_int, default=shards)
    p.add_argument("--allow-large", action="store_true")

    p = add("fit", cmd_fit, "fit the decay slope of a density CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--plot", help="write a log-log SVG chart here")

    p = add("verify", cmd_verify, "run the invariant suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--quick", action="store_true")

    p = add("witness", cmd_witness, "witness cosines for even m, half-angle chain for m = 2^k")
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--a", help="cosine for the half-angle chain (powers of two only)")

    p = add("schanuel", cmd_schanuel, "growth constant of the height census")
    p.add_argument("--field", default="Q")
    p.add_argument("--B", default="250,500,1000", help="ascending comma list")
    p.add_argument("--shards", type=_positive_int, default=shards)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "census" and not (args.B or args.grid):
        parser.error("census needs --B or --grid")
    if args.command == "density" and not (args.B or args.grid):
        parser.error("density needs --B or --grid")
    try:
        return args.func(args)
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
