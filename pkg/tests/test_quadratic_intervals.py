import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from alphacf.cf_strings import periodic_compare, surd_of_periodic
from alphacf.errors import DomainError, PreconditionError
from alphacf.exact_arith import QuadraticNumber, qn_compare
from alphacf.quadratic_intervals import (
    GOLDEN,
    BisectionState,
    BoundedType,
    bisection_enumerate,
    bounded_type_check,
    coverage,
    doubling_chain,
    gap_pseudocenter,
    horocycle_bounds_check,
    interval_of,
    is_maximal,
    maximal_container,
    min_denominator_between,
    period_double,
    periodic_digits,
)

from oracles import rationals_upto

unit_rationals = st.fractions(min_value=0, max_value=1, max_denominator=400).filter(lambda r: r > 0)


def brute_min_den(lo: Fraction, hi: Fraction) -> Fraction:
    q = 1
    while True:
        p = math.floor(lo * q) + 1
        if Fraction(p, q) < hi:
            return Fraction(p, q)
        q += 1


def test_third_interval():
    iv = interval_of(Fraction(1, 3))
    assert iv.left == QuadraticNumber(-3, 1, 2, 13)
    assert iv.right == QuadraticNumber(-1, 1, 2, 3)


def test_unit_interval():
    iv = interval_of(1)
    assert iv.left == GOLDEN and iv.right == 1 and iv.is_unit_interval
    assert iv.contains(1) and not iv.contains(GOLDEN)
    assert not interval_of(Fraction(1, 2)).contains(Fraction(1, 2) + 1)


def test_domain():
    with pytest.raises(DomainError):
        interval_of(Fraction(7, 5))
    with pytest.raises(DomainError):
        interval_of(0)


def test_maximality_examples():
    assert is_maximal(Fraction(1, 3)) and is_maximal(Fraction(2, 5))
    assert is_maximal(Fraction(3, 8))
    assert not is_maximal(Fraction(2, 3))  # [0; 1, 2]: the split (1)(2) fails
    assert maximal_container(Fraction(2, 3)).pseudocenter == 1
    assert not is_maximal(Fraction(4, 13))  # [0; 3, 4] sits inside I_(1/3)
    assert maximal_container(Fraction(4, 13)).pseudocenter == Fraction(1, 3)


@given(unit_rationals)
def test_pseudocenter_inside(r):
    assert interval_of(r).contains(r)


@given(unit_rationals)
def test_container_invariants(r):
    box = maximal_container(r)
    assert is_maximal(box.pseudocenter)
    assert box.contains_interval(interval_of(r))
    assert box.den <= r.denominator
    if is_maximal(r):
        assert box.pseudocenter == r


@given(unit_rationals, unit_rationals)
def test_maximal_intervals_disjoint(r, s):
    a, b = maximal_container(r), maximal_container(s)
    assert a.pseudocenter == b.pseudocenter or not a.intersects(b)


@given(st.floats(0, 3), st.floats(1e-6, 0.5))
def test_min_denominator_brute_force(lo, w):
    lo_f, hi_f = Fraction(lo), Fraction(lo) + Fraction(w)
    got = min_denominator_between(lo_f, hi_f)
    assert lo_f < got < hi_f
    assume(got.denominator < 10**4)
    assert got.denominator == brute_min_den(lo_f, hi_f).denominator


digits = st.lists(st.integers(1, 6), min_size=1, max_size=5).map(tuple)


@given(digits, digits)
def test_gap_pseudocenter_matches_stern_brocot(s, t):
    c = periodic_compare(s, t)
    assume(c != 0)
    lo, hi = (s, t) if c < 0 else (t, s)
    got = gap_pseudocenter(periodic_digits(lo), periodic_digits(hi))
    assert got == min_denominator_between(surd_of_periodic(lo), surd_of_periodic(hi))


def test_gap_pseudocenter_rejects_equal():
    with pytest.raises(PreconditionError):
        gap_pseudocenter(periodic_digits((2,)), periodic_digits((2, 2)), max_digits=50)


def test_seed_family():
    st0 = BisectionState.seed(Fraction(1, 4))
    assert [iv.pseudocenter for iv in st0.intervals] == [Fraction(1, n) for n in (5, 4, 3, 2, 1)]
    assert len(st0.gaps) == 4


def test_small_den_bounds():
    assert [iv.pseudocenter for iv in bisection_enumerate(Fraction(2, 5), 1, 1)] == [1]
    assert [iv.pseudocenter for iv in bisection_enumerate(Fraction(2, 5), 1, 2)] == [Fraction(1, 2), 1]


def test_enumeration_sorted_and_disjoint():
    ivs = bisection_enumerate(Fraction(1, 5), 1, 60)
    for a, b in zip(ivs, ivs[1:]):
        assert qn_compare(a.right, b.left) <= 0
    assert all(iv.den <= 60 for iv in ivs)


def test_min_width_filter():
    full = bisection_enumerate(Fraction(1, 5), 1, 60)
    wide = bisection_enumerate(Fraction(1, 5), 1, 60, min_width=Fraction(1, 1000))
    # narrow gaps are left alone, so fewer intervals come out
    assert {iv.pseudocenter for iv in wide} < {iv.pseudocenter for iv in full}


def test_range_checks():
    with pytest.raises(PreconditionError):
        bisection_enumerate(Fraction(1, 2), Fraction(1, 3), 10)
    with pytest.raises(PreconditionError):
        bisection_enumerate(0, 1, 10)


def test_coverage_bracket():
    c = coverage(Fraction(1, 3), 1, 10)
    assert c.count == 5
    assert c.lower <= c.upper and c.upper - c.lower <= 10 * c.error
    assert str(c.value).startswith("0.6551")


def test_period_double_examples():
    assert period_double(Fraction(1, 2)) == Fraction(2, 5)
    assert period_double(Fraction(2, 5)) == Fraction(12, 31)
    assert interval_of(Fraction(12, 31)).right == interval_of(Fraction(2, 5)).left
    with pytest.raises(PreconditionError):
        period_double(Fraction(2, 3))


def test_doubling_chain_limit():
    ch = doubling_chain(Fraction(1, 2), 3)
    assert [iv.pseudocenter for iv in ch.intervals] == [Fraction(1, 2), Fraction(2, 5), Fraction(12, 31)]
    assert qn_compare(ch.limit_lower, ch.limit_upper) < 0
    assert qn_compare(ch.limit_upper, ch.intervals[-1].left) <= 0


def test_bounded_type():
    assert bounded_type_check((3, 1, 4)) == (BoundedType.VIOLATES, Fraction(1, 4))
    assert bounded_type_check((3, 2, 1, 2))[0] is BoundedType.SAFE
    assert bounded_type_check((3, 3, 1))[0] is BoundedType.UNDECIDED


@pytest.mark.parametrize("n", [2, 3, 5])
def test_horocycle_small(n):
    for r in rationals_upto(60):
        if Fraction(1, n + 1) < r < Fraction(1, n):
            assert horocycle_bounds_check(r, n)


def test_horocycle_precondition():
    with pytest.raises(PreconditionError):
        horocycle_bounds_check(Fraction(1, 2), 2)
    with pytest.raises(PreconditionError):
        horocycle_bounds_check(Fraction(3, 4), 1)
