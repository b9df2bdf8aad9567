"""Quadratic intervals, maximality, and the bisection enumeration of maximal ones.

For a rational ``a = [0; A+] = [0; A-]`` in (0, 1) (``A+`` of even length,
``A-`` of odd length) the quadratic interval is the open interval
``I_a = ([0; per A-], [0; per A+])``.  ``I_1`` is the half-open interval
``((sqrt 5 - 1)/2, 1]``.  Maximal intervals are pairwise disjoint and their
union has full measure in (0, 1].
"""

from __future__ import annotations

import enum
import functools
import itertools
import math
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal
from fractions import Fraction
from typing import Iterable, Iterator

from .cf_strings import (
    PQString,
    cf_expand,
    cf_value,
    is_maximal_string,
    surd_of_periodic,
    twin,
)
from .errors import DomainError, PreconditionError
from .exact_arith import Exact, QuadraticNumber, as_quadratic, qn_compare

__all__ = [
    "QuadraticInterval",
    "Gap",
    "BisectionState",
    "Coverage",
    "DoublingChain",
    "BoundedType",
    "interval_of",
    "is_maximal",
    "maximal_container",
    "gap_pseudocenter",
    "bisection_enumerate",
    "coverage",
    "period_double",
    "doubling_chain",
    "bounded_type_check",
    "horocycle_bounds_check",
    "min_denominator_between",
]

GOLDEN = surd_of_periodic((1,))  # (sqrt 5 - 1)/2


@dataclass(frozen=True)
class QuadraticInterval:
    pseudocenter: Fraction
    even_string: PQString | None
    odd_string: PQString
    left: QuadraticNumber
    right: QuadraticNumber
    is_unit_interval: bool = False

    @property
    def den(self) -> int:
        return self.pseudocenter.denominator

    @property
    def left_period(self) -> PQString:
        return self.odd_string

    @property
    def right_period(self) -> PQString | None:
        """Period of the right endpoint; ``None`` for I_1 whose right end is 1."""
        return self.even_string

    def contains(self, x: Exact) -> bool:
        if qn_compare(self.left, x) >= 0:
            return False
        c = qn_compare(x, self.right)
        return c < 0 or (c == 0 and self.is_unit_interval)

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def contains_interval(self, other: "QuadraticInterval") -> bool:
        """``other`` is a subset of ``self``."""
        if qn_compare(self.left, other.left) > 0:
            return False
        c = qn_compare(other.right, self.right)
        return c < 0 or (c == 0 and (self.is_unit_interval or not other.is_unit_interval))

    def intersects(self, other: "QuadraticInterval") -> bool:
        return qn_compare(self.left, other.right) < 0 and qn_compare(other.left, self.right) < 0

    def length_bounds(self, digits: int) -> tuple[Fraction, Fraction]:
        llo, lhi = self.left.bounds(digits)
        rlo, rhi = self.right.bounds(digits)
        return max(rlo - lhi, Fraction(0)), rhi - llo

    def __str__(self) -> str:
        close = "]" if self.is_unit_interval else ")"
        return f"I_{self.pseudocenter} = ({self.left}, {self.right}{close}"


@functools.lru_cache(maxsize=None)
def _interval_cached(r: Fraction) -> QuadraticInterval:
    twins = cf_expand(r)
    if twins.even is None:
        return QuadraticInterval(r, None, twins.odd, GOLDEN, QuadraticNumber.from_rational(1), True)
    left = surd_of_periodic(twins.odd)
    right = surd_of_periodic(twins.even)
    return QuadraticInterval(r, twins.even, twins.odd, left, right)


def interval_of(r: Fraction | int) -> QuadraticInterval:
    """The quadratic interval generated by ``r`` in (0, 1]."""
    r = Fraction(r)
    if not 0 < r <= 1:
        raise DomainError(f"{r} is not in (0, 1]")
    return _interval_cached(r)


def is_maximal(r: Fraction | int) -> bool:
    """Maximality of ``I_r``, decided on the partial quotients of ``r``."""
    iv = interval_of(r)
    odd = is_maximal_string(iv.odd_string)
    if iv.even_string is not None:
        even = is_maximal_string(iv.even_string)
        if even != odd:
            raise AssertionError(f"twin strings of {r} disagree on maximality")
    return odd


def _convergent_candidates(r: Fraction) -> set[Fraction]:
    iv = interval_of(r)
    out = set()
    for s in (iv.even_string, iv.odd_string):
        if s is None:
            continue
        for k in range(1, len(s) + 1):
            out.add(cf_value(s[:k]))
    return out


def maximal_container(r: Fraction | int) -> QuadraticInterval:
    """The unique maximal quadratic interval containing ``I_r``.

    A strictly larger quadratic interval is generated by a convergent of ``r``,
    so only prefixes of the two expansions of ``r`` need to be tried.
    """
    r = Fraction(r)
    target = interval_of(r)
    found = [interval_of(b) for b in _convergent_candidates(r)
             if is_maximal(b) and interval_of(b).contains_interval(target)]
    if len(found) != 1:
        raise AssertionError(f"expected one maximal container for {r}, found {len(found)}")
    return found[0]


def periodic_digits(period: PQString) -> Iterator[int]:
    return itertools.cycle(period)


def gap_pseudocenter(left_digits: Iterable[int], right_digits: Iterable[int],
                     max_digits: int = 100_000) -> Fraction:
    """Minimal-denominator rational strictly between two irrationals.

    Both arguments are digit streams of irrationals in (0, 1).  With a common
    prefix ``S`` and first differing digits ``x < y``, the answer is
    ``[0; S, x + 1]``.
    """
    prefix = []
    for i, (x, y) in enumerate(zip(left_digits, right_digits)):
        if x != y:
            return cf_value(prefix + [min(x, y) + 1])
        if i >= max_digits:
            break
        prefix.append(x)
    raise PreconditionError("digit streams do not separate; the endpoints coincide")


def min_denominator_between(lo: Exact, hi: Exact) -> Fraction:
    """Smallest-denominator rational in the open interval ``(lo, hi)``.

    Stern-Brocot descent; independent of continued fraction strings.
    """
    if qn_compare(lo, hi) >= 0:
        raise PreconditionError("empty interval")
    fl = math.floor(as_quadratic(lo))
    lo = as_quadratic(lo) - fl
    hi = as_quadratic(hi) - fl
    # search in (lo, hi) with 0 <= lo < 1
    if qn_compare(hi, 1) > 0:
        return Fraction(fl + 1)
    ln, ld, rn, rd = 0, 1, 1, 1
    while True:
        m = Fraction(ln + rn, ld + rd)
        if qn_compare(m, lo) <= 0:
            # step right: largest k with (ln + k rn)/(ld + k rd) <= lo
            k = _gallop(lambda k: qn_compare(Fraction(ln + k * rn, ld + k * rd), lo) <= 0)
            ln, ld = ln + k * rn, ld + k * rd
        elif qn_compare(m, hi) >= 0:
            k = _gallop(lambda k: qn_compare(Fraction(k * ln + rn, k * ld + rd), hi) >= 0)
            rn, rd = k * ln + rn, k * ld + rd
        else:
            return m + fl


def _gallop(ok) -> int:
    """Largest ``k >= 1`` with ``ok(k)``, for ``ok`` true at 1 and monotone."""
    k = 1
    while ok(2 * k):
        k *= 2
    lo, hi = k, 2 * k
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


# -- bisection ----------------------------------------------------------------


@dataclass
class Gap:
    """Closed gap ``[left, right]`` between two adjacent maximal intervals."""

    left_interval: QuadraticInterval
    right_interval: QuadraticInterval
    _pseudocenter: Fraction | None = field(default=None, repr=False)

    @property
    def left(self) -> QuadraticNumber:
        return self.left_interval.right

    @property
    def right(self) -> QuadraticNumber:
        return self.right_interval.left

    @property
    def is_point(self) -> bool:
        return self.left == self.right

    def pseudocenter(self) -> Fraction:
        if self._pseudocenter is None:
            self._pseudocenter = gap_pseudocenter(
                periodic_digits(self.left_interval.right_period),
                periodic_digits(self.right_interval.left_period),
            )
        return self._pseudocenter


@dataclass
class BisectionState:
    """The family ``F_n`` of maximal intervals and the gaps between them."""

    generation: int
    intervals: list[QuadraticInterval]
    gaps: list[Gap]

    @classmethod
    def seed(cls, lo: Exact) -> "BisectionState":
        """``F_1 = {I_(1/n)}`` down to the first interval lying left of ``lo``."""
        ivs = [interval_of(1)]
        n = 1
        while qn_compare(ivs[-1].right, lo) > 0:
            n += 1
            ivs.append(interval_of(Fraction(1, n)))
        ivs.reverse()
        gaps = [Gap(a, b) for a, b in zip(ivs, ivs[1:])]
        return cls(1, ivs, gaps)

    def advance(self, den_max: int, lo: Exact, hi: Exact,
                min_width: Fraction | None = None) -> tuple["BisectionState", bool]:
        """Bisect every open gap whose pseudocenter has denominator <= den_max.

        Returns the next state and whether any interval was added.
        """
        new_ivs: list[QuadraticInterval] = []
        new_gaps: list[Gap] = []
        for gap in self.gaps:
            if not _gap_active(gap, lo, hi, min_width) or gap.pseudocenter().denominator > den_max:
                new_gaps.append(gap)
                continue
            c = gap.pseudocenter()
            iv = interval_of(c)
            new_ivs.append(iv)
            new_gaps.append(Gap(gap.left_interval, iv))
            new_gaps.append(Gap(iv, gap.right_interval))
        merged = sorted(self.intervals + new_ivs, key=lambda iv: iv.pseudocenter)
        return BisectionState(self.generation + 1, merged, new_gaps), bool(new_ivs)

    def open_gaps(self, den_max: int, lo: Exact, hi: Exact,
                  min_width: Fraction | None = None) -> list[Gap]:
        return [g for g in self.gaps
                if _gap_active(g, lo, hi, min_width) and g.pseudocenter().denominator <= den_max]


def _gap_active(gap: Gap, lo: Exact, hi: Exact, min_width: Fraction | None) -> bool:
    if gap.is_point:
        return False
    if qn_compare(gap.right, lo) <= 0 or qn_compare(gap.left, hi) >= 0:
        return False
    if min_width is not None:
        _, width_hi = _width_bounds(gap.left, gap.right)
        if width_hi < min_width:
            return False
    return True


def _width_bounds(a: QuadraticNumber, b: QuadraticNumber, digits: int = 30):
    alo, ahi = a.bounds(digits)
    blo, bhi = b.bounds(digits)
    return blo - ahi, bhi - alo


def _intersects_range(iv: QuadraticInterval, lo: Exact, hi: Exact) -> bool:
    return qn_compare(iv.left, hi) < 0 and qn_compare(iv.right, lo) > 0


def _check_range(lo: Exact, hi: Exact) -> None:
    if qn_compare(lo, 0) <= 0:
        raise PreconditionError("range lower bound must be positive")
    if qn_compare(hi, 1) > 0 or qn_compare(lo, hi) >= 0:
        raise PreconditionError("range must satisfy 0 < lo < hi <= 1")


def bisection_run(lo: Exact, hi: Exact, den_max: int,
                  min_width: Fraction | None = None) -> BisectionState:
    """Run the bisection until no gap can yield a pseudocenter within ``den_max``."""
    _check_range(lo, hi)
    if den_max < 1:
        raise PreconditionError("den_max must be >= 1")
    state = BisectionState.seed(lo)
    while True:
        state, grew = state.advance(den_max, lo, hi, min_width)
        if not grew:
            return state


def bisection_enumerate(lo: Exact, hi: Exact, den_max: int,
                        min_width: Fraction | None = None) -> list[QuadraticInterval]:
    """All maximal intervals meeting ``(lo, hi]`` with pseudocenter denominator <= den_max.

    Results are sorted left to right.  Every output is checked to be maximal
    and the family is checked to be pairwise disjoint.
    """
    state = bisection_run(lo, hi, den_max, min_width)
    out = [iv for iv in state.intervals
           if iv.den <= den_max and _intersects_range(iv, lo, hi)]
    for iv in out:
        if not is_maximal(iv.pseudocenter):
            raise AssertionError(f"bisection produced non-maximal I_{iv.pseudocenter}")
    for a, b in zip(out, out[1:]):
        if qn_compare(a.right, b.left) > 0:
            raise AssertionError(f"I_{a.pseudocenter} and I_{b.pseudocenter} overlap")
    return out


# -- coverage -----------------------------------------------------------------


@dataclass(frozen=True)
class Coverage:
    """Certified enclosure ``lower <= covered length <= upper``."""

    den_max: int
    lower: Decimal
    upper: Decimal
    range_length_lower: Decimal
    range_length_upper: Decimal
    count: int

    @property
    def value(self) -> Decimal:
        return self.lower

    @property
    def error(self) -> Decimal:
        return self.upper - self.lower

    @property
    def residual_upper(self) -> Decimal:
        return self.range_length_upper - self.lower

    @property
    def residual_lower(self) -> Decimal:
        return max(self.range_length_lower - self.upper, Decimal(0))


def _qmax(x: Exact, y: Exact) -> Exact:
    return x if qn_compare(x, y) >= 0 else y


def _qmin(x: Exact, y: Exact) -> Exact:
    return x if qn_compare(x, y) <= 0 else y


def _round(x: Fraction, digits: int, mode: str) -> Decimal:
    scaled = x * 10**digits
    n = math.floor(scaled) if mode == ROUND_FLOOR else math.ceil(scaled)
    return Decimal(n).scaleb(-digits)


def coverage_of(intervals: list[QuadraticInterval], lo: Exact, hi: Exact,
                precision: int = 12, den_max: int = 0) -> Coverage:
    """Total length of ``intervals`` clipped to ``(lo, hi]``, enclosed by directed rounding."""
    work = precision + len(str(len(intervals))) + 2
    lower = upper = Fraction(0)
    for iv in intervals:
        a = _qmax(iv.left, lo)
        b = _qmin(iv.right, hi)
        if qn_compare(a, b) >= 0:
            continue
        alo, ahi = as_quadratic(a).bounds(work)
        blo, bhi = as_quadratic(b).bounds(work)
        lower += max(blo - ahi, Fraction(0))
        upper += bhi - alo
    llo, lhi = (as_quadratic(hi) - as_quadratic(lo)).bounds(work)
    return Coverage(
        den_max,
        _round(lower, precision, ROUND_FLOOR),
        _round(upper, precision, ROUND_CEILING),
        _round(llo, precision, ROUND_FLOOR),
        _round(lhi, precision, ROUND_CEILING),
        len(intervals),
    )


def coverage(lo: Exact, hi: Exact, den_max: int, precision: int = 12) -> Coverage:
    """Covered length of ``(lo, hi]`` by the maximal intervals with den <= den_max."""
    return coverage_of(bisection_enumerate(lo, hi, den_max), lo, hi, precision, den_max)


# -- period doubling ------------------------------------------------------------


def _require_maximal(r: Fraction) -> None:
    if not is_maximal(r):
        raise PreconditionError(f"I_{r} is not maximal")


def period_double(r: Fraction | int) -> Fraction:
    """Pseudocenter ``[0; A- A-]`` of the maximal interval adjacent to ``I_r`` on the left."""
    r = Fraction(r)
    _require_maximal(r)
    odd = interval_of(r).odd_string
    doubled = cf_value(odd + odd)
    if not is_maximal(doubled):
        raise AssertionError(f"period doubling of {r} gave non-maximal {doubled}")
    if interval_of(doubled).right != interval_of(r).left:
        raise AssertionError(f"I_{doubled} and I_{r} do not share an endpoint")
    return doubled


@dataclass(frozen=True)
class DoublingChain:
    intervals: list[QuadraticInterval]
    limit_lower: Fraction
    limit_upper: Exact


def doubling_chain(r: Fraction | int, depth: int) -> DoublingChain:
    """``I_r = I_(a_1) > I_(a_2) > ...``, each adjacent to the next, plus a bracket for the limit."""
    if depth < 1:
        raise PreconditionError("depth must be >= 1")
    pcs = [Fraction(r)]
    _require_maximal(pcs[0])
    while len(pcs) < depth:
        pcs.append(period_double(pcs[-1]))
    ivs = [interval_of(a) for a in pcs]
    for big, small in zip(ivs, ivs[1:]):
        if small.right != big.left:
            raise AssertionError("consecutive chain intervals are not adjacent")
    # every later a_m has the odd string of the next doubling as a prefix
    nxt = interval_of(cf_value(ivs[-1].odd_string * 2)).odd_string
    ends = (cf_value(nxt), cf_value(nxt[:-1] + (nxt[-1] + 1,)))
    lower = min(ends)
    upper = _qmin(max(ends), ivs[-1].left)
    _, last_len = ivs[-1].length_bounds(40)
    width_hi = _width_bounds(as_quadratic(lower), as_quadratic(upper))[1]
    if width_hi > last_len:
        raise AssertionError("limit bracket wider than the last chain interval")
    return DoublingChain(ivs, lower, upper)


# -- bounded type and horocycles ------------------------------------------------


class BoundedType(enum.Enum):
    VIOLATES = "violates"
    SAFE = "safe"
    UNDECIDED = "undecided"


def bounded_type_check(prefix: Iterable[int]) -> tuple[BoundedType, Fraction | None]:
    """Classify a continued fraction prefix against the first-digit bound.

    ``VIOLATES`` (with witness ``r``): some later digit exceeds the first, so
    every number with this prefix lies in ``I_r``.  ``SAFE``: every later digit
    is below the first, so no such number lies in a quadratic interval (as far
    as the prefix goes).  ``UNDECIDED``: the digits touch the bound.
    """
    digits = tuple(prefix)
    if not digits:
        raise PreconditionError("prefix must be nonempty")
    a1 = digits[0]
    for k, a in enumerate(digits[1:], start=1):
        if a > a1:
            return BoundedType.VIOLATES, cf_value(digits[:k])
    if all(a <= a1 - 1 for a in digits[1:]):
        return BoundedType.SAFE, None
    return BoundedType.UNDECIDED, None


def horocycle_bounds_check(r: Fraction, n: int) -> bool:
    """``B(r, 1/((n+2)q^2)) <= I_r <= B(r, 1/((n-1)q^2))`` for ``r = p/q`` in (1/(n+1), 1/n)."""
    r = Fraction(r)
    if n < 2 or not Fraction(1, n + 1) < r < Fraction(1, n):
        raise PreconditionError(f"{r} is not strictly inside (1/{n + 1}, 1/{n}) with n >= 2")
    q2 = r.denominator ** 2
    inner = Fraction(1, (n + 2) * q2)
    outer = Fraction(1, (n - 1) * q2)
    iv = interval_of(r)
    inner_ok = qn_compare(iv.left, r - inner) <= 0 and qn_compare(r + inner, iv.right) <= 0
    outer_ok = qn_compare(r - outer, iv.left) <= 0 and qn_compare(iv.right, r + outer) <= 0
    return inner_ok and outer_ok
