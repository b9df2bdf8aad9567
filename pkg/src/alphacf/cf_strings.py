"""Finite strings of partial quotients and the orders defined on them.

A string ``S = (s_1, ..., s_n)`` of positive integers stands for the finite
continued fraction ``[0; s_1, ..., s_n]`` and, when repeated forever, for the
purely periodic quadratic surd ``[0; S, S, ...]``.  Strings are plain tuples.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import DomainError
from .exact_arith import MobiusMatrix, QuadraticNumber

__all__ = [
    "PQString",
    "TwinExpansion",
    "as_string",
    "cf_expand",
    "cf_value",
    "alt_compare",
    "periodic_compare",
    "surd_of_periodic",
    "is_maximal_string",
    "twin",
    "smallest_period",
    "format_string",
    "parse_string",
]

PQString = tuple[int, ...]


class TwinExpansion(NamedTuple):
    """The two continued fraction strings of one rational.

    ``even`` is ``None`` only for the rational 1, whose sole expansion is (1).
    """

    even: PQString | None
    odd: PQString


def as_string(digits: Iterable[int]) -> PQString:
    s = tuple(int(x) for x in digits)
    if not s:
        raise ValueError("partial-quotient string must be nonempty")
    if any(x < 1 for x in s):
        raise ValueError(f"partial quotients must be positive: {s}")
    return s


def cf_value(s: Sequence[int]) -> Fraction:
    """Exact value of ``[0; s_1, ..., s_n]``."""
    m = MobiusMatrix.of_string(s)
    return Fraction(m.p12, m.p22)


def _euclid(r: Fraction) -> PQString:
    digits = []
    p, q = r.denominator, r.numerator  # 1/r = p/q
    while q:
        a, rem = divmod(p, q)
        digits.append(a)
        p, q = q, rem
    return tuple(digits)


def twin(s: Sequence[int]) -> PQString:
    """The other expansion of the same rational.

    ``(..., a)`` with ``a >= 2`` becomes ``(..., a - 1, 1)`` and vice versa.
    By convention ``twin((1,)) == (1,)``: 1 has no second expansion.
    """
    s = tuple(s)
    if s == (1,):
        return s
    if s[-1] == 1:
        return s[:-2] + (s[-2] + 1,)
    return s[:-1] + (s[-1] - 1, 1)


def cf_expand(r: Fraction | int) -> TwinExpansion:
    """Both continued fraction expansions of ``r`` in (0, 1]."""
    r = Fraction(r)
    if not 0 < r <= 1:
        raise DomainError(f"{r} is not in (0, 1]")
    canon = _euclid(r)
    if canon == (1,):
        return TwinExpansion(None, canon)
    other = twin(canon)
    if len(canon) % 2 == 0:
        return TwinExpansion(canon, other)
    return TwinExpansion(other, canon)


def alt_compare(s: Sequence[int], t: Sequence[int]) -> int:
    """Alternating lexicographic order on strings of equal length.

    At the first (1-based) position ``l`` where the strings differ, a smaller
    digit means a smaller string when ``l`` is even and a larger one when ``l``
    is odd.  This agrees with the order of the values ``[0; S]``, ``[0; T]``.
    """
    if len(s) != len(t):
        raise ValueError(f"length mismatch: {len(s)} != {len(t)}")
    for i, (x, y) in enumerate(zip(s, t)):
        if x != y:
            less = x < y if i % 2 == 1 else x > y  # i is 0-based
            return -1 if less else 1
    return 0


def periodic_compare(s: Sequence[int], t: Sequence[int]) -> int:
    """Order of the surds with periods ``S`` and ``T``, read off ``ST`` vs ``TS``."""
    s, t = tuple(s), tuple(t)
    return alt_compare(s + t, t + s)


def surd_of_periodic(s: Sequence[int]) -> QuadraticNumber:
    """The purely periodic surd ``[0; S, S, S, ...]`` in (0, 1)."""
    m = MobiusMatrix.of_string(as_string(s))
    # fixed point of x -> (p11 x + p12)/(p21 x + p22): p21 x^2 + (p22 - p11) x - p12 = 0
    b = m.p22 - m.p11
    disc = b * b + 4 * m.p12 * m.p21
    return QuadraticNumber(-b, 1, 2 * m.p21, disc)


def smallest_period(s: Sequence[int]) -> int:
    """Length of the shortest ``P`` with ``S = P^k``."""
    s = tuple(s)
    n = len(s)
    # prefix function (KMP failure table)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and s[i] != s[k]:
            k = fail[k - 1]
        if s[i] == s[k]:
            k += 1
        fail[i] = k
    p = n - fail[-1] if n else 0
    return p if n % p == 0 else n


def is_maximal_string(a: Sequence[int]) -> bool:
    """Whether ``[0; A]`` generates a maximal quadratic interval.

    Every split ``A = ST`` into nonempty pieces must satisfy ``ST < TS``, the
    only exception being ``S == T`` of odd length (period doubling).
    """
    a = as_string(a)
    n = len(a)
    for k in range(1, n):
        s, t = a[:k], a[k:]
        c = alt_compare(a, t + s)
        if c < 0:
            continue
        if c == 0 and s == t and k % 2 == 1:
            continue
        return False
    return True


_STR_RE = re.compile(r"^\s*(per)?\[\s*(\d+(?:\s*,\s*\d+)*)\s*\]\s*$")


def format_string(s: Sequence[int] | None, periodic: bool = False) -> str | None:
    if s is None:
        return None
    body = ",".join(str(x) for x in s)
    return f"per[{body}]" if periodic else f"[{body}]"


def parse_string(text: str) -> tuple[PQString, bool]:
    """Parse ``"[2,1,3]"`` or ``"per[2,1]"``; returns ``(digits, periodic)``."""
    m = _STR_RE.match(text)
    if not m:
        raise ValueError(f"not a partial-quotient string: {text!r}")
    digits = as_string(int(x) for x in m.group(2).split(","))
    return digits, m.group(1) is not None


def common_period(s: Sequence[int], t: Sequence[int]) -> bool:
    """Whether ``S`` and ``T`` are powers of one string (``ST == TS``)."""
    s, t = tuple(s), tuple(t)
    g = math.gcd(len(s), len(t))
    return s + t == t + s and s[:g] == t[:g]
