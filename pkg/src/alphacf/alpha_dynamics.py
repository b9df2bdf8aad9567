"""Exact dynamics of the alpha-continued fraction maps.

For ``alpha`` in (0, 1] the map ``T_alpha`` acts on ``[alpha - 1, alpha]`` by
``T(0) = 0`` and ``T(x) = eps/x - c`` with ``eps = sign(x)`` and
``c = floor(1/|x| + 1 - alpha)``.  Every step is the Moebius map of
``[[0, eps], [1, c]]``; products of these matrices encode orbit prefixes.
All computations are exact (``Fraction`` or ``QuadraticNumber``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cf_strings import cf_value, surd_of_periodic
from .errors import DomainError, PreconditionError
from .exact_arith import (
    Exact,
    MobiusMatrix,
    QuadraticNumber,
    mobius_apply,
    qn_compare,
    qn_floor,
)
from .quadratic_intervals import (
    GOLDEN,
    QuadraticInterval,
    interval_of,
    is_maximal,
    min_denominator_between,
)

__all__ = [
    "OrbitStep",
    "MatchingExponents",
    "MatchingReport",
    "EntropyClass",
    "NNConditions",
    "t_alpha_step",
    "encode_orbit",
    "orbit",
    "matching_exponents",
    "pseudocenter_orbit_table",
    "expected_pseudocenter_orbits",
    "verify_algebraic_matching",
    "verify_orbit_matching",
    "nn_conditions",
    "classify_entropy",
    "sample_points",
    "matching_report",
    "transport_holds",
    "orbit_until_zero",
    "STEP_CAP",
]

STEP_CAP = 10_000

SHIFT = MobiusMatrix(1, 1, 0, 1)
FLIP = MobiusMatrix(-1, 0, 1, 1)


def _norm(x: Exact) -> Exact:
    if isinstance(x, QuadraticNumber) and x.is_rational:
        return x.to_fraction()
    if isinstance(x, int):
        return Fraction(x)
    return x


def _check_alpha(alpha: Exact) -> None:
    if qn_compare(alpha, 0) <= 0 or qn_compare(alpha, 1) > 0:
        raise DomainError(f"alpha = {alpha} is not in (0, 1]")


def _sign(x: Exact) -> int:
    return qn_compare(x, 0)


def t_alpha_step(alpha: Exact, x: Exact) -> tuple[Exact, int, int]:
    """One application of ``T_alpha``: returns ``(T(x), eps, c)``.

    ``x = 0`` maps to 0 and is reported with ``eps = c = 0``.
    """
    alpha, x = _norm(alpha), _norm(x)
    _check_alpha(alpha)
    if qn_compare(x, alpha - 1) < 0 or qn_compare(x, alpha) > 0:
        raise DomainError(f"x = {x} is outside [alpha - 1, alpha] for alpha = {alpha}")
    eps = _sign(x)
    if eps == 0:
        return Fraction(0), 0, 0
    inv = eps / x  # 1/|x|
    c = qn_floor(inv + 1 - alpha)
    return _norm(inv - c), eps, c


@dataclass(frozen=True)
class OrbitStep:
    """Step ``k`` of an orbit: ``x`` is the point mapped, ``image`` its image.

    ``cumulative`` is ``M_{alpha, x_0, k}``, the product of the first ``k``
    digit matrices, so that ``x_0 = cumulative(image)``.
    """

    k: int
    x: Exact
    epsilon: int
    c: int
    image: Exact
    cumulative: MobiusMatrix


def encode_orbit(alpha: Exact, x: Exact, n: int, check: bool = True) -> list[OrbitStep]:
    """The first ``n`` steps of the orbit of ``x`` with cumulative matrices.

    Stops early if the orbit reaches 0 (no digit is defined there).  With
    ``check`` the inversion identity is verified exactly at every step, as is
    the strict growth of the ``q`` entries when ``alpha`` is below the golden
    mean.
    """
    alpha, x0 = _norm(alpha), _norm(x)
    if n > STEP_CAP:
        raise PreconditionError(f"n = {n} exceeds the step cap {STEP_CAP}")
    field_d = alpha.d if isinstance(alpha, QuadraticNumber) else None
    growing = qn_compare(alpha, GOLDEN) < 0
    steps: list[OrbitStep] = []
    m = MobiusMatrix.identity()
    cur = x0
    for k in range(1, n + 1):
        if _sign(cur) == 0:
            break
        nxt, eps, c = t_alpha_step(alpha, cur)
        prev_q = m.p22
        m = m @ MobiusMatrix.digit(c, eps)
        if check:
            if isinstance(nxt, QuadraticNumber) and field_d is not None and nxt.d != field_d:
                raise AssertionError("orbit left the quadratic field of alpha")
            if mobius_apply(m, nxt) != x0:
                raise AssertionError(f"inversion identity fails at step {k}")
            if m.det() not in (1, -1):
                raise AssertionError("cumulative matrix is not unimodular")
            if growing and not (m.p22 > prev_q >= 1):
                raise AssertionError(f"q_{k} = {m.p22} does not exceed q_{k - 1} = {prev_q}")
        steps.append(OrbitStep(k, cur, eps, c, nxt, m))
        cur = nxt
    return steps


def orbit(alpha: Exact, x: Exact, n: int) -> list[Exact]:
    """``[x, T x, ..., T^n x]``."""
    alpha = _norm(alpha)
    pts = [_norm(x)]
    for _ in range(n):
        pts.append(t_alpha_step(alpha, pts[-1])[0])
    return pts


def orbit_until_zero(alpha: Exact, x: Exact, cap: int = STEP_CAP) -> list[Exact]:
    """Orbit of ``x`` up to and including its first zero."""
    alpha = _norm(alpha)
    pts = [_norm(x)]
    while _sign(pts[-1]) != 0:
        if len(pts) > cap:
            raise AssertionError(f"orbit of {x} did not reach 0 within {cap} steps")
        pts.append(t_alpha_step(alpha, pts[-1])[0])
    return pts


def _cumulative(alpha: Exact, x: Exact, n: int, check: bool = False) -> MobiusMatrix | None:
    """``M_{alpha, x, n}``, or ``None`` when the orbit hits 0 too early."""
    if n == 0:
        return MobiusMatrix.identity()
    steps = encode_orbit(alpha, x, n, check=check)
    if len(steps) < n:
        return None
    return steps[-1].cumulative


# -- matching exponents ----------------------------------------------------------


@dataclass(frozen=True)
class MatchingExponents:
    N: int
    M: int


class EntropyClass(enum.Enum):
    INCREASING = "increasing"
    CONSTANT = "constant"
    DECREASING = "decreasing"

    @property
    def code(self) -> str:
        return {"increasing": "inc", "constant": "const", "decreasing": "dec"}[self.value]

    @classmethod
    def from_code(cls, code: str) -> "EntropyClass":
        return {"inc": cls.INCREASING, "const": cls.CONSTANT, "dec": cls.DECREASING}[code]


def _alt_sums(s: Sequence[int]) -> tuple[int, int]:
    """(sum over even 1-based positions, sum over odd 1-based positions)."""
    return sum(s[1::2]), sum(s[0::2])


def matching_exponents(r: Fraction | int) -> MatchingExponents:
    """Matching exponents ``(N, M)`` of the maximal interval ``I_r``.

    From the even-length expansion: ``N`` sums the digits in even positions,
    ``M`` those in odd positions.  The odd-length expansion must give the same
    pair through ``N = 1 + even sum``, ``M = -1 + odd sum``.  For ``r = 1``
    only the odd rule applies and gives ``(1, 0)``.
    """
    r = Fraction(r)
    if not is_maximal(r):
        raise PreconditionError(f"I_{r} is not maximal")
    iv = interval_of(r)
    ev, od = _alt_sums(iv.odd_string)
    from_odd = MatchingExponents(1 + ev, od - 1)
    if iv.even_string is None:
        return from_odd
    ev, od = _alt_sums(iv.even_string)
    exps = MatchingExponents(ev, od)
    if exps != from_odd:
        raise AssertionError(f"even and odd expansions of {r} give different exponents")
    return exps


def classify_entropy(exps: MatchingExponents) -> EntropyClass:
    if exps.N < exps.M:
        return EntropyClass.INCREASING
    if exps.N > exps.M:
        return EntropyClass.DECREASING
    return EntropyClass.CONSTANT


# -- pseudocenter orbits ------------------------------------------------------------


@dataclass(frozen=True)
class OrbitTable:
    pseudocenter: Fraction
    exponents: MatchingExponents
    alpha_orbit: list[Fraction]
    alpha_minus_one_orbit: list[Fraction]


def _minus_one_plus(s: Sequence[int]) -> Fraction:
    return Fraction(-1) + (cf_value(s) if s else 0)


def expected_pseudocenter_orbits(r: Fraction) -> tuple[list[Fraction], list[Fraction]]:
    """Orbits of ``a`` and ``a - 1`` under ``T_a`` built from the digits of ``a`` alone.

    With ``a = [0; a_1, ..., a_n]``, ``n`` even: the orbit of ``a`` runs
    through ``[-1; a_j - t + 1, a_(j+1), ..., a_n]`` for even ``j``, ``t = 1..a_j``;
    the orbit of ``a - 1`` through ``[-1; a_j - t, a_(j+1), ...]`` for odd ``j``,
    closing each block at ``[-1; a_(j+2), ...]``.  Both end at 0.
    """
    r = Fraction(r)
    iv = interval_of(r)
    if iv.even_string is None:
        return [r, Fraction(0)], [r - 1]
    a = iv.even_string
    n = len(a)
    up = [r]
    for j in range(2, n + 1, 2):
        for t in range(1, a[j - 1] + 1):
            up.append(_minus_one_plus((a[j - 1] - t + 1,) + a[j:]))
    down = [r - 1]
    for j in range(1, n, 2):
        for t in range(1, a[j - 1]):
            down.append(_minus_one_plus((a[j - 1] - t,) + a[j:]))
        down.append(_minus_one_plus(a[j + 1:]) if j + 2 <= n else Fraction(0))
    # [-1; 1] is 0
    return [_norm(x) for x in up], [_norm(x) for x in down]


def pseudocenter_orbit_table(r: Fraction | int) -> OrbitTable:
    """Exact orbits of ``a`` and ``a - 1`` under ``T_a`` until they reach 0.

    Their lengths are the matching exponents and their points follow the
    digit-block pattern of :func:`expected_pseudocenter_orbits`.
    """
    r = Fraction(r)
    exps = matching_exponents(r)
    up = orbit_until_zero(r, r)
    down = orbit_until_zero(r, r - 1)
    if len(up) - 1 != exps.N or len(down) - 1 != exps.M:
        raise AssertionError(
            f"orbit lengths ({len(up) - 1}, {len(down) - 1}) differ from exponents ({exps.N}, {exps.M})")
    exp_up, exp_down = expected_pseudocenter_orbits(r)
    if up != exp_up or down != exp_down:
        raise AssertionError(f"orbits of {r} do not follow the digit-block pattern")
    return OrbitTable(r, exps, up, down)


# -- matching checks ------------------------------------------------------------------


def verify_algebraic_matching(alpha: Exact, exps: MatchingExponents) -> bool:
    """``M_{a,a,N} == [[1,1],[0,1]] M_{a,a-1,M} [[-1,0],[1,1]]`` exactly."""
    alpha = _norm(alpha)
    _check_alpha(alpha)
    lhs = _cumulative(alpha, alpha, exps.N)
    rhs = _cumulative(alpha, alpha - 1, exps.M)
    if lhs is None or rhs is None:
        return False
    return lhs == SHIFT @ rhs @ FLIP


def verify_orbit_matching(alpha: Exact, exps: MatchingExponents) -> bool:
    """``T^(N+1)(alpha) == T^(M+1)(alpha - 1)`` exactly."""
    alpha = _norm(alpha)
    _check_alpha(alpha)
    return orbit(alpha, alpha, exps.N + 1)[-1] == orbit(alpha, alpha - 1, exps.M + 1)[-1]


@dataclass(frozen=True)
class NNConditions:
    c1: bool
    c2: bool
    c3: bool

    @property
    def all(self) -> bool:
        return self.c1 and self.c2 and self.c3


def nn_conditions(alpha: Exact, k1: int, k2: int) -> NNConditions:
    """The three matching conditions with step counts ``(k1, k2)``.

    c1: the orbit prefixes ``{T^n alpha : n < k1}`` and ``{T^m (alpha-1) : m < k2}``
    are disjoint.  c2: ``M_{a,a,k1} == [[1,1],[0,1]] M_{a,a-1,k2}`` (false if
    either orbit reaches 0 before the matrices are defined).  c3:
    ``T^k1 alpha`` is neither ``alpha`` nor ``alpha - 1``.
    """
    alpha = _norm(alpha)
    _check_alpha(alpha)
    up = orbit(alpha, alpha, k1)
    down = orbit(alpha, alpha - 1, k2)
    c1 = not (set(up[:k1]) & set(down[:k2]))
    lhs = _cumulative(alpha, alpha, k1)
    rhs = _cumulative(alpha, alpha - 1, k2)
    c2 = lhs is not None and rhs is not None and lhs == SHIFT @ rhs
    c3 = up[k1] != alpha and up[k1] != alpha - 1
    return NNConditions(c1, c2, c3)


# -- sample points and reports ----------------------------------------------------------


def sample_points(r: Fraction | int, surd_count: int = 2) -> list[Exact]:
    """Exact points of ``I_r``: the pseudocenter, the simplest rational on each
    side of it, and surds with periods ``A+ k`` / ``A- k`` for the smallest
    ``k`` that lands inside.
    """
    r = Fraction(r)
    iv = interval_of(r)
    pts: list[Exact] = [r, min_denominator_between(iv.left, r)]
    if iv.is_unit_interval:
        pts.append(Fraction(4, 5))
        periods = [iv.odd_string] * surd_count
    else:
        pts.append(min_denominator_between(r, iv.right))
        periods = [iv.even_string, iv.odd_string][:surd_count]
    k = 0
    for s in periods:
        for k in range(k + 1, 10_000):
            x = surd_of_periodic(s + (k,))
            if iv.contains(x):
                pts.append(x)
                break
        if iv.even_string is not None:
            k = 0
    for x in pts:
        if not iv.contains(x):
            raise AssertionError(f"sample {x} is not inside {iv}")
    return pts


@dataclass(frozen=True)
class MatchingReport:
    alpha: Exact
    exponents: MatchingExponents
    algebraic_ok: bool
    orbit_match_ok: bool
    nn: NNConditions
    entropy_class: EntropyClass


def matching_report(r: Fraction | int, alpha: Exact | None = None) -> MatchingReport:
    """Matching diagnostics of the maximal interval ``I_r`` evaluated at ``alpha``."""
    r = Fraction(r)
    exps = matching_exponents(r)
    alpha = r if alpha is None else _norm(alpha)
    if not interval_of(r).contains(alpha):
        raise PreconditionError(f"{alpha} is not inside I_{r}")
    return MatchingReport(
        alpha,
        exps,
        verify_algebraic_matching(alpha, exps),
        verify_orbit_matching(alpha, exps),
        nn_conditions(alpha, exps.N + 1, exps.M + 1),
        classify_entropy(exps),
    )


def transport_holds(r: Fraction, x: Exact) -> bool:
    """Cumulative matrices of ``x`` and ``x - 1`` under ``T_x`` agree with those
    of the pseudocenter for every ``k <= N`` and ``h <= M``."""
    exps = matching_exponents(r)
    x = _norm(x)
    a_up = encode_orbit(r, r, exps.N)
    a_down = encode_orbit(r, r - 1, exps.M)
    x_up = encode_orbit(x, x, exps.N)
    x_down = encode_orbit(x, x - 1, exps.M)
    if len(x_up) != exps.N or len(x_down) != exps.M:
        return False
    return ([s.cumulative for s in a_up] == [s.cumulative for s in x_up]
            and [s.cumulative for s in a_down] == [s.cumulative for s in x_down])


def interval_report_fields(iv: QuadraticInterval) -> tuple[MatchingExponents, EntropyClass]:
    exps = matching_exponents(iv.pseudocenter)
    return exps, classify_entropy(exps)
