"""Command-line front end.

Exit codes: 0 on success, 2 when an input violates a precondition (including
malformed arguments), 1 when an internal consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import __version__
from .alpha_dynamics import (
    encode_orbit,
    matching_report,
    sample_points,
)
from .cf_strings import cf_expand, cf_value, format_string, parse_string, surd_of_periodic
from .entropy_numerics import entropy_scan, scan_to_csv
from .exact_arith import Exact, parse_quadratic, parse_rational
from .export import (
    coverage_to_csv,
    format_exact,
    interval_record,
    intervals_to_jsonl,
    orbit_to_tsv,
)
from .quadratic_intervals import (
    bisection_enumerate,
    coverage_of,
    doubling_chain,
    interval_of,
    is_maximal,
    maximal_container,
)

EXIT_OK, EXIT_INTERNAL, EXIT_PRECONDITION = 0, 1, 2

log = logging.getLogger("alphacf")


class UsageError(ValueError):
    pass


# -- argument parsing -------------------------------------------------------------


def parse_exact_rational(text: str) -> Fraction:
    """``"p/q"`` or a finite continued fraction ``"[a1,a2,...]"``."""
    text = text.strip()
    if text.startswith("["):
        return cf_value(parse_string(text)[0])
    return parse_rational(text)


def parse_exact_number(text: str) -> Exact:
    """Rational forms plus ``"(a+b*sqrt(d))/c"`` and ``"per[...]"``."""
    text = text.strip()
    if text.startswith("per["):
        return surd_of_periodic(parse_string(text)[0])
    if text.startswith("("):
        q = parse_quadratic(text)
        return q.to_fraction() if q.is_rational else q
    return parse_exact_rational(text)


def parse_bound(text: str) -> Exact:
    """Range bound: any exact form, or a terminating decimal taken exactly."""
    try:
        return parse_exact_number(text)
    except ValueError:
        return Fraction(text.strip())


def _range(args) -> tuple[Exact, Exact]:
    if args.range:
        parts = args.range.split(",")
        if len(parts) != 2:
            raise UsageError("--range takes LO,HI")
        return parse_bound(parts[0]), parse_bound(parts[1])
    if args.lo is None or args.hi is None:
        raise UsageError("give LO HI or --range LO,HI")
    return parse_bound(args.lo), parse_bound(args.hi)


def _den_list(text: str) -> list[int]:
    out = [int(x) for x in text.split(",")]
    if any(d < 1 for d in out):
        raise UsageError("--den-max values must be >= 1")
    return out


# -- commands -------------------------------------------------------------------------


def cmd_expand(args) -> str:
    r = parse_exact_rational(args.r)
    tw = cf_expand(r)
    if args.format == "jsonl":
        return json.dumps({"r": format_exact(r), "even": format_string(tw.even),
                           "odd": format_string(tw.odd)}) + "\n"
    return f"r = {format_exact(r)}\neven: {format_string(tw.even)}\nodd:  {format_string(tw.odd)}\n"


def _interval_human(iv) -> str:
    close = "]" if iv.is_unit_interval else ")"
    return (f"I_{format_exact(iv.pseudocenter)} = ({iv.left}, {iv.right}{close}\n"
            f"  decimal: ({iv.left.to_decimal_str(15)}, {iv.right.to_decimal_str(15)}{close}\n"
            f"  A+ = {format_string(iv.even_string)}  A- = {format_string(iv.odd_string)}\n")


def cmd_interval(args) -> str:
    iv = interval_of(parse_exact_rational(args.r))
    if args.format == "jsonl":
        rec = {"pseudocenter": format_exact(iv.pseudocenter), "even": format_string(iv.even_string),
               "odd": format_string(iv.odd_string), "left": str(iv.left), "right": str(iv.right),
               "left_dec": float(iv.left), "right_dec": float(iv.right)}
        return json.dumps(rec) + "\n"
    return _interval_human(iv)


def cmd_maximal(args) -> str:
    r = parse_exact_rational(args.r)
    verdict = is_maximal(r)
    box = maximal_container(r)
    if args.format == "jsonl":
        return json.dumps({"r": format_exact(r), "maximal": verdict,
                           "container": interval_record(box)}) + "\n"
    return f"I_{format_exact(r)} maximal: {'yes' if verdict else 'no'}\ncontainer: " + _interval_human(box)


def cmd_enumerate(args) -> str:
    lo, hi = _range(args)
    ivs = bisection_enumerate(lo, hi, args.den_max)
    if args.format == "human":
        return "".join(_interval_human(iv) for iv in ivs)
    return intervals_to_jsonl(ivs)


def cmd_coverage(args) -> str:
    lo, hi = _range(args)
    dens = _den_list(args.den_max)
    rows = []
    for d in dens:
        ivs = bisection_enumerate(lo, hi, d)
        rows.append(coverage_of(ivs, lo, hi, args.precision, d))
    if args.format == "human":
        return "".join(f"D={c.den_max}: covered in [{c.lower}, {c.upper}], residual <= {c.residual_upper}"
                       f" ({c.count} intervals)\n" for c in rows)
    return coverage_to_csv(rows)


def _report_dict(rep) -> dict:
    return {"alpha": format_exact(rep.alpha), "N": rep.exponents.N, "M": rep.exponents.M,
            "algebraic_ok": rep.algebraic_ok, "orbit_match_ok": rep.orbit_match_ok,
            "c1": rep.nn.c1, "c2": rep.nn.c2, "c3": rep.nn.c3,
            "entropy_class": rep.entropy_class.value}


def cmd_match(args) -> str:
    r = parse_exact_rational(args.r)
    if args.samples:
        alphas = [parse_exact_number(s) for s in args.samples]
    elif args.all_samples:
        alphas = sample_points(r)
    else:
        alphas = [r]
    out = []
    for a in alphas:
        rep = matching_report(r, a)
        if args.format == "jsonl":
            out.append(json.dumps(_report_dict(rep)) + "\n")
        else:
            d = _report_dict(rep)
            out.append(f"alpha = {d['alpha']}: N={d['N']} M={d['M']} class={d['entropy_class']} "
                       f"algebraic={d['algebraic_ok']} orbit={d['orbit_match_ok']} "
                       f"c1={d['c1']} c2={d['c2']} c3={d['c3']}\n")
        if args.trace:
            exps = rep.exponents
            out.append(f"# orbit of alpha ({exps.N + 1} steps)\n")
            out.append(orbit_to_tsv(rep.alpha, encode_orbit(rep.alpha, rep.alpha, exps.N + 1)))
            out.append(f"# orbit of alpha - 1 ({exps.M + 1} steps)\n")
            out.append(orbit_to_tsv(rep.alpha - 1, encode_orbit(rep.alpha, rep.alpha - 1, exps.M + 1)))
    return "".join(out)


def cmd_orbit(args) -> str:
    alpha = parse_exact_number(args.alpha)
    x = parse_exact_number(args.x) if args.x is not None else alpha
    return orbit_to_tsv(x, encode_orbit(alpha, x, args.steps))


def cmd_double(args) -> str:
    r = parse_exact_rational(args.r)
    chain = doubling_chain(r, args.depth)
    if args.format == "jsonl":
        rows = [json.dumps(interval_record(iv)) + "\n" for iv in chain.intervals]
        rows.append(json.dumps({"limit_lower": format_exact(chain.limit_lower),
                                "limit_upper": format_exact(chain.limit_upper)}) + "\n")
        return "".join(rows)
    lines = [_interval_human(iv) for iv in chain.intervals]
    lines.append(f"limit in [{format_exact(chain.limit_lower)}, {format_exact(chain.limit_upper)}]\n")
    return "".join(lines)


def cmd_entropy_scan(args) -> str:
    lo, hi = float(args.lo), float(args.hi)
    rows = entropy_scan(lo, hi, args.steps, args.iters, args.seed, args.n_orbits,
                        args.burn_in, args.workers)
    return scan_to_csv(rows)


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="alphacf",
        description="Maximal quadratic intervals and matching for alpha-continued fractions.",
        epilog="Exact inputs: 'p/q' or '[a1,a2,...]'; orbit points also accept "
               "'(a+b*sqrt(d))/c' and 'per[a1,...]'.",
    )
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, fmt="human", formats=("human", "jsonl")):
        sp = sub.add_parser(name, help=help, description=help)
        sp.set_defaults(func=func)
        sp.add_argument("--format", choices=formats, default=fmt, help=f"output format (default {fmt})")
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        return sp

    sp = add("expand", cmd_expand, "both continued fraction expansions of r")
    sp.add_argument("r")
    sp = add("interval", cmd_interval, "the quadratic interval I_r, exact and decimal")
    sp.add_argument("r")
    sp = add("maximal", cmd_maximal, "maximality of I_r and its maximal container")
    sp.add_argument("r")

    def add_range(sp):
        sp.add_argument("lo", nargs="?", help="range lower bound (exclusive)")
        sp.add_argument("hi", nargs="?", help="range upper bound (inclusive)")
        sp.add_argument("--range", help="LO,HI instead of positionals")

    sp = add("enumerate", cmd_enumerate, "maximal intervals meeting (LO, HI] by bisection",
             fmt="jsonl", formats=("jsonl", "human"))
    add_range(sp)
    sp.add_argument("--den-max", type=int, required=True, help="pseudocenter denominator bound D")
    sp = add("coverage", cmd_coverage, "covered length of (LO, HI] over a sweep of D",
             fmt="csv", formats=("csv", "human"))
    add_range(sp)
    sp.add_argument("--den-max", default="10,100,1000", help="comma-separated D values")
    sp.add_argument("--precision", type=int, default=12, help="decimal digits (default 12)")

    sp = add("match", cmd_match, "matching exponents and checks on the maximal interval I_r")
    sp.add_argument("r")
    sp.add_argument("samples", nargs="*", help="parameters alpha inside I_r (default: r)")
    sp.add_argument("--all-samples", action="store_true", help="use the built-in sample points of I_r")
    sp.add_argument("--trace", action="store_true", help="append TSV orbit tables")

    sp = add("orbit", cmd_orbit, "TSV trace of the orbit of x under T_alpha", fmt="tsv", formats=("tsv",))
    sp.add_argument("alpha")
    sp.add_argument("x", nargs="?", help="starting point (default: alpha)")
    sp.add_argument("--steps", type=int, default=10)

    sp = add("double", cmd_double, "period-doubling chain starting at maximal I_r")
    sp.add_argument("r")
    sp.add_argument("--depth", type=int, default=3)

    sp = add("entropy-scan", cmd_entropy_scan, "Birkhoff entropy estimates on a grid (CSV)",
             fmt="csv", formats=("csv",))
    sp.add_argument("lo", type=float)
    sp.add_argument("hi", type=float)
    sp.add_argument("--steps", type=int, default=10)
    sp.add_argument("--iters", type=int, default=10**6)
    sp.add_argument("--burn-in", type=int, default=1000)
    sp.add_argument("--n-orbits", type=int, default=16)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        text = args.func(args)
    except AssertionError as e:
        print(f"alphacf: internal check failed: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, ArithmeticError) as e:
        print(f"alphacf: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
