"""Exact arithmetic in Q and in real quadratic fields Q(sqrt d).

Rationals are plain :class:`fractions.Fraction` objects.  Elements of a real
quadratic field are :class:`QuadraticNumber` instances holding the value
``(a + b*sqrt(d)) / c`` in lowest terms.  Every comparison and floor is
decided with integer arithmetic only.
"""

from __future__ import annotations

import functools
import math
import re
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import FieldMismatchError, PoleError, PreconditionError

__all__ = [
    "QuadraticNumber",
    "MobiusMatrix",
    "as_quadratic",
    "qn_compare",
    "qn_floor",
    "mobius_apply",
    "parse_rational",
    "parse_quadratic",
    "format_rational",
    "squarefree_part",
]

#: Radicand stored on rational values (b == 0).
RATIONAL_D = 0

#: Default trial-division bound for squarefree reduction.
SQUAREFREE_BOUND = 10**6

Exact = Union[int, Fraction, "QuadraticNumber"]


def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


@functools.lru_cache(maxsize=65536)
def squarefree_part(n: int, bound: int = SQUAREFREE_BOUND) -> tuple[int, int]:
    """Split ``n > 0`` as ``s**2 * f`` with ``f`` squarefree; return ``(s, f)``.

    Trial division runs over ``p`` with ``p**3 <= n``.  What is left after that
    has at most two prime factors, so it is squarefree unless it is a perfect
    square.  Inputs needing a divisor above ``bound`` are rejected.
    """
    if n <= 0:
        raise ValueError(f"radicand must be positive, got {n}")
    s, f, p = 1, 1, 2
    while p * p * p <= n:
        if p > bound:
            raise PreconditionError(f"radicand {n} exceeds the squarefree trial-division bound {bound}")
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            f *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(n)
    if r * r == n:
        s *= r
    else:
        f *= n
    return s, f


class QuadraticNumber:
    """The real number ``(a + b*sqrt(d)) / c``.

    Canonical form: ``c >= 1``, ``gcd(a, b, c) == 1``, ``d`` squarefree and not
    a perfect square when ``b != 0``.  Rationals carry ``b == 0`` and
    ``d == RATIONAL_D``.  Instances are immutable and hashable.
    """

    __slots__ = ("a", "b", "c", "d")

    a: int
    b: int
    c: int
    d: int

    def __init__(self, a: int, b: int = 0, c: int = 1, d: int = RATIONAL_D, *,
                 bound: int = SQUAREFREE_BOUND):
        if c == 0:
            raise ZeroDivisionError("denominator c must be nonzero")
        if b != 0:
            if d <= 0:
                raise ValueError(f"radicand must be positive, got {d}")
            s, d = squarefree_part(d, bound)
            b *= s
            if d == 1:
                a, b, d = a + b, 0, RATIONAL_D
        self._set(a, b, c, d)

    def _set(self, a: int, b: int, c: int, d: int) -> None:
        if c < 0:
            a, b, c = -a, -b, -c
        if b == 0:
            d = RATIONAL_D
        g = math.gcd(a, b, c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def _raw(cls, a: int, b: int, c: int, d: int) -> "QuadraticNumber":
        # d is already squarefree (or b == 0); skip the reduction
        obj = cls.__new__(cls)
        obj._set(a, b, c, d)
        return obj

    @classmethod
    def from_rational(cls, r: int | Fraction) -> "QuadraticNumber":
        r = Fraction(r)
        return cls._raw(r.numerator, 0, r.denominator, RATIONAL_D)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticNumber is immutable")

    # -- inspection -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.a, self.c)

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber._raw(self.a, -self.b, self.c, self.d)

    def bounds(self, digits: int) -> tuple[Fraction, Fraction]:
        """Rationals ``lo <= self <= hi`` with ``hi - lo <= 10**-digits``."""
        scale = 10**digits
        if self.b == 0:
            v = Fraction(self.a, self.c)
            return v, v
        # floor(|b| sqrt(d) * scale * c') with exact isqrt
        k = self.c * scale
        t = math.isqrt(self.b * self.b * self.d * k * k)
        if self.b > 0:
            lo_num, hi_num = self.a * k + t, self.a * k + t + 1
        else:
            lo_num, hi_num = self.a * k - t - 1, self.a * k - t
        den = self.c * k
        return Fraction(lo_num, den), Fraction(hi_num, den)

    def __float__(self) -> float:
        lo, _ = self.bounds(20)
        return float(lo)

    def to_decimal_str(self, digits: int = 12) -> str:
        """Decimal rendering truncated toward -inf at ``digits`` places."""
        lo, _ = self.bounds(digits + 1)
        q = math.floor(lo * 10**digits)
        sign = "-" if q < 0 else ""
        q = abs(q)
        return f"{sign}{q // 10**digits}.{q % 10**digits:0{digits}d}"

    # -- arithmetic -------------------------------------------------------

    def _common_d(self, other: "QuadraticNumber") -> int:
        if self.b == 0:
            return other.d
        if other.b == 0 or other.d == self.d:
            return self.d
        raise FieldMismatchError(f"cannot combine Q(sqrt {self.d}) with Q(sqrt {other.d})")

    def __add__(self, other):
        other = as_quadratic(other, strict=False)
        if other is None:
            return NotImplemented
        d = self._common_d(other)
        return QuadraticNumber._raw(self.a * other.c + other.a * self.c,
                                    self.b * other.c + other.b * self.c,
                                    self.c * other.c, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber._raw(-self.a, -self.b, self.c, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = as_quadratic(other, strict=False)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = as_quadratic(other, strict=False)
        if other is None:
            return NotImplemented
        d = self._common_d(other)
        a = self.a * other.a + self.b * other.b * d
        b = self.a * other.b + self.b * other.a
        return QuadraticNumber._raw(a, b, self.c * other.c, d)

    __rmul__ = __mul__

    def reciprocal(self) -> "QuadraticNumber":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        return QuadraticNumber._raw(self.c * self.a, -self.c * self.b, norm, self.d)

    def __truediv__(self, other):
        other = as_quadratic(other, strict=False)
        if other is None:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- order ------------------------------------------------------------

    def sign(self) -> int:
        return _sign_lin(self.a, self.b, self.d)

    def __floor__(self) -> int:
        return qn_floor(self)

    def __eq__(self, other):
        other = as_quadratic(other, strict=False)
        if other is None:
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    def __lt__(self, other):
        other = as_quadratic(other, strict=False)
        return NotImplemented if other is None else qn_compare(self, other) < 0

    def __le__(self, other):
        other = as_quadratic(other, strict=False)
        return NotImplemented if other is None else qn_compare(self, other) <= 0

    def __gt__(self, other):
        other = as_quadratic(other, strict=False)
        return NotImplemented if other is None else qn_compare(self, other) > 0

    def __ge__(self, other):
        other = as_quadratic(other, strict=False)
        return NotImplemented if other is None else qn_compare(self, other) >= 0

    # -- text ---------------------------------------------------------------

    def __str__(self):
        if self.b == 0:
            return format_rational(Fraction(self.a, self.c))
        op = "+" if self.b > 0 else "-"
        return f"({self.a}{op}{abs(self.b)}*sqrt({self.d}))/{self.c}"

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b}, {self.c}, {self.d})"


def as_quadratic(x, strict: bool = True) -> QuadraticNumber | None:
    """Coerce ``int``/``Fraction``/``QuadraticNumber`` to ``QuadraticNumber``."""
    if isinstance(x, QuadraticNumber):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return QuadraticNumber.from_rational(x)
    if strict:
        raise TypeError(f"expected an exact number, got {type(x).__name__}")
    return None


def _sign_lin(a: int, b: int, d: int) -> int:
    """Sign of ``a + b*sqrt(d)`` for integer a, b and non-square d > 0."""
    sa, sb = _sign(a), _sign(b)
    if sb == 0 or sa == sb:
        return sa if sa else sb
    if sa == 0:
        return sb
    return sa if a * a > b * b * d else sb


def _sign_two_radicals(a: int, b1: int, d1: int, b2: int, d2: int) -> int:
    """Sign of ``a + b1*sqrt(d1) + b2*sqrt(d2)`` with distinct squarefree d1, d2."""
    # sign of the radical part w = b1 sqrt(d1) + b2 sqrt(d2)
    s1, s2 = _sign(b1), _sign(b2)
    if s1 == 0 or s2 == 0 or s1 == s2:
        sw = s1 if s1 else s2
    else:
        sw = s1 if b1 * b1 * d1 > b2 * b2 * d2 else s2
    sa = _sign(a)
    if sw == 0 or sa == 0 or sa == sw:
        return sa if sa else sw
    # opposite signs: compare a^2 with w^2 = b1^2 d1 + b2^2 d2 + 2 b1 b2 sqrt(d1 d2)
    diff = _sign_lin(a * a - b1 * b1 * d1 - b2 * b2 * d2, -2 * b1 * b2, d1 * d2)
    if diff == 0:
        return 0
    return sa if diff > 0 else sw


def qn_compare(x: Exact, y: Exact) -> int:
    """Return -1, 0 or 1 as ``x < y``, ``x == y``, ``x > y``; exact."""
    x, y = as_quadratic(x), as_quadratic(y)
    if x.b == 0 or y.b == 0 or x.d == y.d:
        d = x.d if x.b else y.d
        return _sign_lin(x.a * y.c - y.a * x.c, x.b * y.c - y.b * x.c, d)
    return _sign_two_radicals(x.a * y.c - y.a * x.c, x.b * y.c, x.d, -y.b * x.c, y.d)


def qn_floor(x: Exact) -> int:
    """Greatest integer ``k <= x``."""
    x = as_quadratic(x)
    if x.b == 0:
        return x.a // x.c
    t = math.isqrt(x.b * x.b * x.d)  # t < |b| sqrt(d) < t + 1
    whole = x.a + t if x.b > 0 else x.a - t - 1
    return whole // x.c


class MobiusMatrix(NamedTuple):
    """Integer 2x2 matrix ``[[p11, p12], [p21, p22]]`` acting by Moebius maps."""

    p11: int
    p12: int
    p21: int
    p22: int

    @classmethod
    def identity(cls) -> "MobiusMatrix":
        return cls(1, 0, 0, 1)

    @classmethod
    def digit(cls, c: int, eps: int = 1) -> "MobiusMatrix":
        """The one-step matrix ``[[0, eps], [1, c]]``, i.e. ``x -> eps / (c + x)``."""
        return cls(0, eps, 1, c)

    @classmethod
    def of_string(cls, digits) -> "MobiusMatrix":
        """Matrix of ``x -> [0; s_1, ..., s_n + x]``."""
        m = cls.identity()
        for s in digits:
            m = m @ cls.digit(s)
        return m

    def __matmul__(self, other: "MobiusMatrix") -> "MobiusMatrix":
        return MobiusMatrix(
            self.p11 * other.p11 + self.p12 * other.p21,
            self.p11 * other.p12 + self.p12 * other.p22,
            self.p21 * other.p11 + self.p22 * other.p21,
            self.p21 * other.p12 + self.p22 * other.p22,
        )

    def det(self) -> int:
        return self.p11 * self.p22 - self.p12 * self.p21

    def inverse(self) -> "MobiusMatrix":
        """Inverse over Z; requires ``det == +-1``."""
        d = self.det()
        if d not in (1, -1):
            raise ValueError(f"matrix is not unimodular (det={d})")
        return MobiusMatrix(d * self.p22, -d * self.p12, -d * self.p21, d * self.p11)

    def apply(self, x: Exact) -> Exact:
        return mobius_apply(self, x)

    def rows(self) -> list[list[int]]:
        return [[self.p11, self.p12], [self.p21, self.p22]]


def mobius_apply(m: MobiusMatrix, x: Exact) -> Exact:
    """Evaluate ``(p11 x + p12) / (p21 x + p22)`` exactly.

    Rational input gives a ``Fraction``; irrational input a ``QuadraticNumber``.
    """
    if isinstance(x, QuadraticNumber) and x.b == 0:
        x = x.to_fraction()
    if not isinstance(x, QuadraticNumber):
        x = Fraction(x)
        den = m.p21 * x + m.p22
        if den == 0:
            raise PoleError(f"{x} is the pole of {m.rows()}")
        return (m.p11 * x + m.p12) / den
    # x = (a + b sqrt d)/c; multiply numerator and denominator by c
    num = QuadraticNumber._raw(m.p11 * x.a + m.p12 * x.c, m.p11 * x.b, 1, x.d)
    den = QuadraticNumber._raw(m.p21 * x.a + m.p22 * x.c, m.p21 * x.b, 1, x.d)
    if den.a == 0 and den.b == 0:
        raise PoleError(f"{x} is the pole of {m.rows()}")
    return num / den


# -- text ------------------------------------------------------------------

_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_QN_RE = re.compile(
    r"^\s*\(\s*([+-]?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*(?:/\s*(\d+))?\s*$"
)


def format_rational(r: int | Fraction) -> str:
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``."""
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(m.group(1)), den)


def parse_quadratic(text: str) -> QuadraticNumber:
    """Parse ``"(a+b*sqrt(d))/c"`` (the ``/c`` is optional) or a rational."""
    m = _QN_RE.match(text)
    if m:
        a, sign, b, d, c = m.groups()
        b = int(b) if sign == "+" else -int(b)
        return QuadraticNumber(int(a), b, int(c) if c else 1, int(d))
    return QuadraticNumber.from_rational(parse_rational(text))
