import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from alphacf.errors import FieldMismatchError, PoleError, PreconditionError
from alphacf.exact_arith import (
    MobiusMatrix,
    QuadraticNumber,
    mobius_apply,
    parse_quadratic,
    parse_rational,
    format_rational,
    qn_compare,
    qn_floor,
    squarefree_part,
)

small = st.integers(-10**6, 10**6)
radicand = st.integers(2, 10**4)


def test_canonical_form():
    x = QuadraticNumber(2, 4, 6, 3)
    assert (x.a, x.b, x.c, x.d) == (1, 2, 3, 3)
    y = QuadraticNumber(0, 1, 1, 12)  # sqrt(12) = 2 sqrt(3)
    assert (y.a, y.b, y.c, y.d) == (0, 2, 1, 3)
    assert QuadraticNumber(0, 3, 1, 9).is_rational
    assert QuadraticNumber(0, 3, 1, 9).to_fraction() == 9


def test_negative_denominator_normalized():
    x = QuadraticNumber(1, 1, -2, 5)
    assert x.c > 0 and float(x) == pytest.approx(-(1 + math.sqrt(5)) / 2)


def test_squarefree_part():
    assert squarefree_part(72) == (6, 2)
    assert squarefree_part(13) == (1, 13)
    assert squarefree_part(1) == (1, 1)


def test_golden_ratio_floor_and_compare():
    g = QuadraticNumber(-1, 1, 2, 5)
    assert qn_floor(g) == 0
    assert qn_floor(1 / g) == 1
    assert qn_compare(g, Fraction(618, 1000)) > 0
    assert qn_compare(g, Fraction(619, 1000)) < 0


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        QuadraticNumber(0, 1, 1, 2) + QuadraticNumber(0, 1, 1, 3)


def test_cross_field_compare():
    assert qn_compare(QuadraticNumber(0, 1, 1, 2), QuadraticNumber(0, 1, 1, 3)) < 0
    # sqrt(2) + 1 vs sqrt(3) + 0.4
    assert qn_compare(QuadraticNumber(1, 1, 1, 2), QuadraticNumber(2, 5, 5, 3)) > 0


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QuadraticNumber(0, 0, 1, 5).reciprocal()


def test_mobius_pole():
    with pytest.raises(PoleError):
        mobius_apply(MobiusMatrix(1, 0, 1, -1), Fraction(1))


def test_parse_roundtrip():
    x = QuadraticNumber(-3, 1, 2, 13)
    assert parse_quadratic(str(x)) == x
    assert parse_rational("3/9") == Fraction(1, 3)
    assert format_rational(2) == "2/1"
    with pytest.raises(ValueError):
        parse_rational("abc")


def test_bounds_bracket():
    x = QuadraticNumber(-1, 1, 1, 2)
    lo, hi = x.bounds(20)
    assert lo <= Fraction(math.sqrt(2) - 1) + Fraction(1, 10**15)
    assert hi - lo <= Fraction(2, 10**20)
    assert qn_compare(lo, x) <= 0 <= qn_compare(hi, x)


@given(small, small, st.integers(1, 1000), radicand)
def test_floor_brackets_value(a, b, c, d):
    x = QuadraticNumber(a, b, c, d)
    f = qn_floor(x)
    assert qn_compare(f, x) <= 0 < qn_compare(f + 1, x)


@given(small, small, st.integers(1, 1000), radicand)
def test_sign_matches_high_precision(a, b, c, d):
    x = QuadraticNumber(a, b, c, d)
    # a + b sqrt(d) vs zero, decided independently by integer arithmetic on a huge scale
    scale = 10**40
    approx = a * scale + b * math.isqrt(d * scale * scale)
    if abs(approx) > abs(b) + 1:
        assert x.sign() == (approx > 0) - (approx < 0)


@given(small, small, st.integers(1, 1000), radicand)
def test_conjugate_product_rational(a, b, c, d):
    x = QuadraticNumber(a, b, c, d)
    assert (x * x.conjugate()).is_rational


@given(small, small, st.integers(1, 50), radicand, st.integers(2, 9))
def test_canonical_uniqueness(a, b, c, d, k):
    x = QuadraticNumber(a, b, c, d)
    y = QuadraticNumber(k * a, k * b, k * c, d)
    assert x == y and hash(x) == hash(y) and (x.a, x.b, x.c, x.d) == (y.a, y.b, y.c, y.d)


@given(small, st.integers(1, 1000))
def test_rational_hash_matches_fraction(p, q):
    assert hash(QuadraticNumber(p, 0, q)) == hash(Fraction(p, q))


mat = st.tuples(*[st.integers(-20, 20)] * 4).map(lambda t: MobiusMatrix(*t))


@given(mat, mat)
def test_det_multiplicative(m, n):
    assert (m @ n).det() == m.det() * n.det()


@given(mat, mat, st.fractions(min_value=0, max_value=1))
def test_composition_is_application(m, n, x):
    try:
        inner = mobius_apply(n, x)
        expect = mobius_apply(m, inner)
    except ZeroDivisionError:
        return
    try:
        got = mobius_apply(m @ n, x)
    except ZeroDivisionError:
        return  # composite may have a removable pole
    assert got == expect


def test_digit_string_matrix():
    m = MobiusMatrix.of_string((2, 1, 2))
    assert Fraction(m.p12, m.p22) == Fraction(3, 8)
    assert abs(m.det()) == 1


def test_squarefree_bound_rejects():
    with pytest.raises(PreconditionError):
        squarefree_part(1000003 * 1000033, bound=100)
