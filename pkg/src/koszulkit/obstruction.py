"""Hilbert-series obstructions to the Backelin-Roos property.

For a Koszul algebra R with codimension c and h-polynomial h, a Golod map from
a complete intersection forces every coefficient of 1 - h(-z)/(1-z)^c to be
non-negative.  Writing h = (1+z)^a g with g(-1) != 0, the coefficients are
eventually a polynomial in k of degree c-a-1 with leading coefficient
-g(-1)/(c-a-1)!, which decides the far tail from g(-1) alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from math import factorial
from typing import Iterable, Optional, Union

from .errors import CodimZero, InvalidRange
from .hilbert import AlgebraNumerics, segre_numerics, veronese_numerics
from .series import IntPolynomial, TruncatedSeries, eval_int, expand_rational_series, factor_out_neg_one


class AsymptoticVerdict(str, enum.Enum):
    EVENTUALLY_NEGATIVE = "EventuallyNegative"
    EVENTUALLY_NONNEGATIVE = "EventuallyNonnegative"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class PassUpTo:
    order: int

    def __str__(self):
        return f"PassUpTo({self.order})"


@dataclass(frozen=True)
class FailAt:
    index: int
    coefficient: int

    def __str__(self):
        return f"FailAt({self.index})"


Verdict = Union[PassUpTo, FailAt]


@dataclass(frozen=True)
class ObstructionReport:
    label: str
    codim_used: int
    scan_order: int
    verdict: Verdict
    vanish_order: int
    g_at_minus_one: int
    asymptotic_verdict: AsymptoticVerdict
    multiplicity_bound_ok: bool
    # True when every coefficient past scan_order is proven non-negative
    tail_verified: bool
    series: TruncatedSeries

    @property
    def passed(self) -> bool:
        return isinstance(self.verdict, PassUpTo)

    @property
    def first_negative_index(self) -> Optional[int]:
        return self.verdict.index if isinstance(self.verdict, FailAt) else None


def default_scan_order(codim: int) -> int:
    return max(200, 2 * codim)


def obstruction_series(h: IntPolynomial, c: int, order: int) -> TruncatedSeries:
    """Coefficients of 1 - h(-z)/(1-z)^c through z**order."""
    s = expand_rational_series(h.negate_variable(), c, order)
    coeffs = [-x for x in s]
    coeffs[0] += 1
    return TruncatedSeries(tuple(coeffs), order)


def tail_polynomial(g: IntPolynomial, d: int) -> IntPolynomial:
    """(d-1)! times the polynomial P with P(k) = [z^k](1 - g(-z)/(1-z)^d) for large k.

    Returned with integer coefficients in the variable k.
    """
    if d < 1:
        raise ValueError("tail polynomial needs d >= 1")
    total = IntPolynomial()
    for j, gj in enumerate(g):
        if gj == 0:
            continue
        # (d-1)! * binom(k - j + d - 1, d - 1) = prod_{l=1}^{d-1} (k - j + l)
        term = IntPolynomial.one()
        for l in range(1, d):
            term = term * IntPolynomial((l - j, 1))
        sign = 1 if j % 2 == 0 else -1
        total = total - term * (sign * gj)
    return total


def _cauchy_root_bound(p: IntPolynomial) -> int:
    lead = abs(p.coefficients[-1])
    m = max((abs(a) for a in p.coefficients[:-1]), default=0)
    # 1 + m/lead, rounded up
    return 1 + -(-m // lead)


def taylor_shift(p: IntPolynomial, s: int) -> IntPolynomial:
    """Coefficients of p(t + s) in t."""
    c = list(p.coefficients)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += s * c[j + 1]
    return IntPolynomial(c)


def _tail_nonnegative_beyond(g: IntPolynomial, d: int, order: int) -> bool:
    if order < g.degree:
        return False
    q = tail_polynomial(g, d)
    if q.coefficients[-1] <= 0:
        return False
    if order + 1 >= _cauchy_root_bound(q):
        return True
    # q(t + order + 1) with non-negative coefficients is >= 0 for all t >= 0
    return all(x >= 0 for x in taylor_shift(q, order + 1))


def ci_multiplicity_check(a: AlgebraNumerics) -> bool:
    """e(R) <= 2^c, strictly when R is known not to be a complete intersection."""
    bound = 2 ** a.codim
    if a.is_complete_intersection is False:
        return a.multiplicity < bound
    return a.multiplicity <= bound


def br_obstruction(a: AlgebraNumerics, order: Optional[int] = None) -> ObstructionReport:
    c = a.codim
    if c == 0:
        raise CodimZero(f"{a.label}: codimension 0, the obstruction series is undefined")
    if order is None:
        order = default_scan_order(c)
    if order < 2:
        raise InvalidRange("scan order must be at least 2")
    series = obstruction_series(a.h_poly, c, order)
    verdict: Verdict = PassUpTo(order)
    for k, v in enumerate(series):
        if v < 0:
            verdict = FailAt(k, v)
            break
    vanish, g = factor_out_neg_one(a.h_poly)
    g_minus = eval_int(g, -1)
    d = c - vanish
    if d >= 1:
        asym = (
            AsymptoticVerdict.EVENTUALLY_NEGATIVE if g_minus > 0 else AsymptoticVerdict.EVENTUALLY_NONNEGATIVE
        )
    else:
        # h(-z)/(1-z)^c is a polynomial: the series is eventually zero
        asym = AsymptoticVerdict.EVENTUALLY_NONNEGATIVE
    tail_ok = False
    if isinstance(verdict, PassUpTo):
        if d >= 1:
            tail_ok = g_minus < 0 and _tail_nonnegative_beyond(g, d, order)
        else:
            tail_ok = order >= a.h_poly.degree
    return ObstructionReport(
        label=a.label,
        codim_used=c,
        scan_order=order,
        verdict=verdict,
        vanish_order=vanish,
        g_at_minus_one=g_minus,
        asymptotic_verdict=asym,
        multiplicity_bound_ok=ci_multiplicity_check(a),
        tail_verified=tail_ok,
        series=series,
    )


def leading_tail_coefficient(report: ObstructionReport):
    """-g(-1)/(d-1)! as a Fraction, d = codim - vanish order."""
    from fractions import Fraction

    d = report.codim_used - report.vanish_order
    return Fraction(-report.g_at_minus_one, factorial(d - 1))


FAMILIES = {"veronese": veronese_numerics, "segre": segre_numerics}


def family_scan(family: str, param_ranges: tuple[Iterable[int], Iterable[int]], order: Optional[int] = None):
    """One report per parameter pair, in lexicographic order.

    Segre pairs with m > n are skipped: the product is symmetric and the
    numerics are only defined for m <= n.
    """
    try:
        build = FAMILIES[family.lower()]
    except KeyError:
        raise InvalidRange(f"unknown family {family!r}; expected one of {sorted(FAMILIES)}") from None
    first, second = (sorted(set(r)) for r in param_ranges)
    reports = []
    for p, q in product(first, second):
        if family.lower() == "segre" and p > q:
            continue
        reports.append(br_obstruction(build(p, q), order))
    return reports
