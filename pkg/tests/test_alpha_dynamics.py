import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from alphacf.alpha_dynamics import (
    EntropyClass,
    MatchingExponents,
    classify_entropy,
    encode_orbit,
    expected_pseudocenter_orbits,
    matching_exponents,
    matching_report,
    nn_conditions,
    orbit,
    orbit_until_zero,
    pseudocenter_orbit_table,
    sample_points,
    t_alpha_step,
    transport_holds,
    verify_algebraic_matching,
    verify_orbit_matching,
)
from alphacf.cf_strings import surd_of_periodic
from alphacf.errors import DomainError, PreconditionError
from alphacf.exact_arith import QuadraticNumber
from alphacf.quadratic_intervals import GOLDEN, interval_of


def test_step_examples():
    assert t_alpha_step(Fraction(7, 20), Fraction(7, 20)) == (Fraction(-1, 7), 1, 3)
    assert t_alpha_step(Fraction(1, 2), Fraction(-1, 2)) == (0, -1, 2)
    assert t_alpha_step(Fraction(1, 2), 0) == (0, 0, 0)


def test_step_domain():
    with pytest.raises(DomainError):
        t_alpha_step(Fraction(1, 2), Fraction(3, 4))
    with pytest.raises(DomainError):
        t_alpha_step(Fraction(3, 2), Fraction(1, 4))


def test_gauss_map_case():
    # alpha = 1 is the Gauss map
    assert orbit(1, Fraction(3, 8), 3) == [Fraction(3, 8), Fraction(2, 3), Fraction(1, 2), 0]


def test_orbit_until_zero():
    assert orbit_until_zero(Fraction(1, 2), Fraction(2, 5))[-1] == 0


def test_encoding_matrix():
    steps = encode_orbit(Fraction(7, 20), Fraction(7, 20), 2)
    m = steps[-1].cumulative
    assert abs(m.det()) == 1 and Fraction(m.p12, m.p22) == Fraction(7, 20)


def test_exponent_examples():
    assert matching_exponents(Fraction(1, 3)) == MatchingExponents(1, 2)
    assert matching_exponents(Fraction(1, 2)) == MatchingExponents(1, 1)
    assert matching_exponents(1) == MatchingExponents(1, 0)
    assert classify_entropy(MatchingExponents(1, 2)) is EntropyClass.INCREASING
    assert classify_entropy(MatchingExponents(1, 1)) is EntropyClass.CONSTANT
    assert classify_entropy(MatchingExponents(1, 0)) is EntropyClass.DECREASING
    assert EntropyClass.from_code("inc") is EntropyClass.INCREASING


def test_nn_examples():
    assert nn_conditions(Fraction(7, 20), 2, 3).all
    per = surd_of_periodic((2, 1, 3))
    nn = nn_conditions(per, 2, 3)
    assert nn.c1 and nn.c2 and not nn.c3


@pytest.mark.parametrize("r", [Fraction(1, 3), Fraction(1, 2), Fraction(2, 5), Fraction(12, 31), Fraction(3, 8)])
def test_matching_on_samples(r):
    exps = matching_exponents(r)
    for a in sample_points(r):
        assert verify_algebraic_matching(a, exps)
        assert verify_orbit_matching(a, exps)
        assert transport_holds(r, a)


def test_pseudocenter_orbit_table():
    t = pseudocenter_orbit_table(Fraction(1, 3))
    up, down = expected_pseudocenter_orbits(Fraction(1, 3))
    assert t.alpha_orbit == up and t.alpha_minus_one_orbit == down
    assert up[-1] == 0 and down[-1] == 0
    assert (len(up) - 1, len(down) - 1) == (1, 2)


def test_unit_interval_samples():
    pts = sample_points(1)
    assert Fraction(4, 5) in pts and 1 in pts
    assert all(interval_of(1).contains(x) for x in pts)
    for a in pts:
        rep = matching_report(1, a)
        assert rep.algebraic_ok and rep.orbit_match_ok
        assert rep.entropy_class is EntropyClass.DECREASING


def test_above_golden_matching():
    # twenty exact points in (g, 1): rationals and surds
    rng = random.Random(7)
    pts = []
    while len(pts) < 20:
        q = rng.randint(5, 400)
        x = Fraction(rng.randint(1, q), q)
        if interval_of(1).contains(x) and x != 1:
            pts.append(x)
    pts += [surd_of_periodic((1, k)) for k in range(2, 6)]
    for a in pts:
        assert interval_of(1).contains(a)
        nn = nn_conditions(a, 2, 1)
        assert nn.c2 and nn.c1
        assert verify_orbit_matching(a, MatchingExponents(1, 0))


def test_report_requires_membership():
    with pytest.raises(PreconditionError):
        matching_report(Fraction(1, 3), Fraction(1, 2))


@given(st.fractions(min_value=Fraction(1, 10), max_value=1, max_denominator=200),
       st.integers(0, 10**6))
def test_step_stays_in_domain(alpha, seed):
    x = alpha - Fraction(seed % 1000, 1000)
    if x == alpha - 1 and alpha == 1:
        x = alpha
    for y in orbit(alpha, x, 6):
        assert alpha - 1 <= y <= alpha


def test_quadratic_orbit_stays_in_field():
    a = surd_of_periodic((3, 2))
    for y in orbit(a, a, 5):
        assert isinstance(y, QuadraticNumber) and y.d == a.d
