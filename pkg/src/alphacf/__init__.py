"""Exact tools for alpha-continued fractions: quadratic intervals, matching, entropy."""

from .cf_strings import cf_expand, cf_value, twin
from .exact_arith import MobiusMatrix, QuadraticNumber
from .quadratic_intervals import (
    QuadraticInterval,
    bisection_enumerate,
    coverage,
    interval_of,
    is_maximal,
    maximal_container,
    period_double,
)
from .alpha_dynamics import matching_exponents, matching_report, t_alpha_step
from .entropy_numerics import birkhoff_entropy, entropy_scan

__version__ = "0.1.0"

__all__ = [
    "MobiusMatrix", "QuadraticNumber", "QuadraticInterval",
    "cf_expand", "cf_value", "twin",
    "bisection_enumerate", "coverage", "interval_of", "is_maximal", "maximal_container",
    "period_double", "matching_exponents", "matching_report", "t_alpha_step",
    "birkhoff_entropy", "entropy_scan",
]
