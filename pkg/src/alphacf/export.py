"""Delimited text formats: JSONL interval rows, coverage CSV, orbit TSV."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable

from .alpha_dynamics import EntropyClass, OrbitStep, classify_entropy, matching_exponents
from .cf_strings import format_string, parse_string
from .exact_arith import Exact, as_quadratic, format_rational, parse_quadratic, parse_rational
from .quadratic_intervals import Coverage, QuadraticInterval, interval_of

__all__ = [
    "interval_record",
    "interval_from_record",
    "intervals_to_jsonl",
    "coverage_to_csv",
    "orbit_to_tsv",
    "format_exact",
]

COVERAGE_FIELDS = ("D", "covered_length", "residual")
ORBIT_FIELDS = ("step", "x", "x_dec", "epsilon", "c", "p_n", "q_n")


def format_exact(x: Exact) -> str:
    return format_rational(x) if isinstance(x, (int, Fraction)) else str(x)


def interval_record(iv: QuadraticInterval) -> dict:
    """One JSONL row for a maximal interval."""
    exps = matching_exponents(iv.pseudocenter)
    return {
        "pseudocenter": format_rational(iv.pseudocenter),
        "even": format_string(iv.even_string),
        "odd": format_string(iv.odd_string),
        "left": str(iv.left),
        "right": str(iv.right),
        "left_dec": float(iv.left),
        "right_dec": float(iv.right),
        "N": exps.N,
        "M": exps.M,
        "entropy_class": classify_entropy(exps).code,
    }


def interval_from_record(rec: dict | str) -> QuadraticInterval:
    """Rebuild a :class:`QuadraticInterval` from a JSONL row and cross-check it."""
    if isinstance(rec, str):
        rec = json.loads(rec)
    pc = parse_rational(rec["pseudocenter"])
    even = parse_string(rec["even"])[0] if rec.get("even") else None
    odd = parse_string(rec["odd"])[0]
    iv = QuadraticInterval(pc, even, odd, parse_quadratic(rec["left"]),
                           parse_quadratic(rec["right"]), even is None)
    if iv != interval_of(pc):
        raise ValueError(f"row for {rec['pseudocenter']} is inconsistent")
    if "entropy_class" in rec:
        EntropyClass.from_code(rec["entropy_class"])
    return iv


def intervals_to_jsonl(ivs: Iterable[QuadraticInterval]) -> str:
    return "".join(json.dumps(interval_record(iv)) + "\n" for iv in ivs)


def coverage_to_csv(rows: Iterable[Coverage]) -> str:
    """``D, covered_length, residual``: certified lower bound and residual upper bound."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COVERAGE_FIELDS)
    for c in rows:
        w.writerow([c.den_max, str(c.lower), str(c.residual_upper)])
    return buf.getvalue()


def orbit_to_tsv(x0: Exact, steps: list[OrbitStep], digits: int = 15) -> str:
    """Row ``n`` holds ``x_n = T^n(x0)``, the digit applied to it, and ``p_n, q_n``."""
    buf = io.StringIO()
    buf.write("\t".join(ORBIT_FIELDS) + "\n")
    points = [x0] + [s.image for s in steps]
    for n, x in enumerate(points):
        if n < len(steps):
            eps, c = str(steps[n].epsilon), str(steps[n].c)
        else:
            eps = c = ""
        if n == 0:
            p, q = 0, 1
        else:
            p, q = steps[n - 1].cumulative.p12, steps[n - 1].cumulative.p22
        buf.write("\t".join([str(n), format_exact(x), as_quadratic(x).to_decimal_str(digits),
                             eps, c, str(p), str(q)]) + "\n")
    return buf.getvalue()
