from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from koszulkit.errors import CodimZero, InvalidRange
from koszulkit.hilbert import segre_numerics, user_numerics, veronese_numerics
from koszulkit.obstruction import (
    AsymptoticVerdict,
    FailAt,
    PassUpTo,
    br_obstruction,
    ci_multiplicity_check,
    default_scan_order,
    family_scan,
    leading_tail_coefficient,
    obstruction_series,
    tail_polynomial,
    taylor_shift,
)
from koszulkit.series import IntPolynomial


def test_veronese_3_2_closed_form():
    r = br_obstruction(veronese_numerics(3, 2), 50)
    assert r.verdict == PassUpTo(50)
    assert r.series[0] == 0
    assert all(r.series[k] == (k + 1) * (k - 1) for k in range(1, 51))
    assert r.tail_verified


def test_veronese_7_2_eventually_negative():
    r = br_obstruction(veronese_numerics(7, 2))
    assert r.g_at_minus_one == 8
    assert r.asymptotic_verdict is AsymptoticVerdict.EVENTUALLY_NEGATIVE
    assert isinstance(r.verdict, FailAt)
    k = r.verdict.index
    assert r.series[k] < 0 and all(x >= 0 for x in r.series.coefficients[:k])


def test_veronese_6_7_window():
    r = br_obstruction(veronese_numerics(6, 7), 130)
    assert r.series[2] == 301614 and r.series[3] == 156453836
    assert 10**152 <= -r.series[121] <= 2 * 10**152
    assert r.first_negative_index == 121
    assert r.g_at_minus_one == -521
    # a different mechanism: g(-1) < 0 yet a negative coefficient in the window
    assert r.asymptotic_verdict is AsymptoticVerdict.EVENTUALLY_NONNEGATIVE


def test_segre_3_6():
    r = br_obstruction(segre_numerics(3, 6))
    assert r.g_at_minus_one == 1
    assert r.asymptotic_verdict is AsymptoticVerdict.EVENTUALLY_NEGATIVE
    assert not r.passed


def test_errors():
    with pytest.raises(CodimZero):
        br_obstruction(segre_numerics(1, 4))
    with pytest.raises(InvalidRange):
        br_obstruction(veronese_numerics(3, 2), 1)
    with pytest.raises(InvalidRange):
        family_scan("grassmann", ([2], [2]))


def test_default_order():
    assert default_scan_order(3) == 200
    assert default_scan_order(786) == 1572


def test_multiplicity_check():
    assert ci_multiplicity_check(veronese_numerics(3, 2))
    assert not ci_multiplicity_check(user_numerics([1, 2, 1], 0, 2, False))
    assert ci_multiplicity_check(user_numerics([1, 2, 1], 0, 2, True))
    assert ci_multiplicity_check(user_numerics([1, 2, 1], 0, 2, None))


def test_complete_intersection_series_vanishes():
    for c in range(1, 6):
        a = user_numerics(IntPolynomial.one_plus_z_power(c).coefficients, 0, c, True)
        r = br_obstruction(a, 40)
        assert all(x == 0 for x in r.series.coefficients[1:])
        assert r.vanish_order == c and r.tail_verified


def test_scan_order_and_segre_symmetry():
    reps = family_scan("segre", ([2, 3, 4], [3, 2]), 30)
    assert [r.label for r in reps] == ["segre(2,2)", "segre(2,3)", "segre(3,3)"]
    with pytest.raises(CodimZero):
        family_scan("segre", ([1], [3]), 30)


def test_fail_index_invariant_under_order():
    a = veronese_numerics(5, 3)
    first = br_obstruction(a).first_negative_index
    for order in (first, first + 7, 3 * first):
        assert br_obstruction(a, order).first_negative_index == first


def test_taylor_shift():
    assert taylor_shift(IntPolynomial([0, 0, 1]), 3) == IntPolynomial([9, 6, 1])


@pytest.mark.parametrize("n,c", [(3, 2), (4, 3), (5, 2), (5, 3), (6, 7), (7, 2), (4, 6)])
def test_tail_is_polynomial_with_predicted_leading_coefficient(n, c):
    a = veronese_numerics(n, c)
    r = br_obstruction(a, max(200, a.h_poly.degree + 2 * a.codim))
    d = r.codim_used - r.vanish_order
    start = a.h_poly.degree + 2
    pts = [(k, r.series[k]) for k in range(start, start + d + 1)]
    # Newton forward differences: the (d-1)-th difference of a degree d-1 polynomial is constant
    diffs = [v for _, v in pts]
    for _ in range(d - 1):
        diffs = [b - a_ for a_, b in zip(diffs, diffs[1:])]
    assert diffs[0] == diffs[1]
    assert Fraction(diffs[0], factorial(d - 1)) == leading_tail_coefficient(r)


def test_tail_polynomial_matches_series():
    a = veronese_numerics(4, 3)
    r = br_obstruction(a, 60)
    q = tail_polynomial(a.h_poly, r.codim_used)
    d = r.codim_used
    for k in range(a.h_poly.degree + 1, 60):
        assert q(k) == r.series[k] * factorial(d - 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 60), st.integers(1, 60))
def test_two_term_h(a, b):
    # 1 + a z + b z^2 with a > b: g(-1) = 1 - a + b <= 0 and the tail is proven non-negative
    if a <= b:
        a, b = b + 1, min(a, b)
    h = IntPolynomial([1, a, b])
    alg = user_numerics(h.coefficients, 3, 3 + a)
    r = br_obstruction(alg, 200)
    gm = r.g_at_minus_one
    if 1 - a + b != 0:
        assert gm == 1 - a + b and r.vanish_order == 0
    if gm < 0:
        assert r.asymptotic_verdict is AsymptoticVerdict.EVENTUALLY_NONNEGATIVE
        if r.passed:
            assert r.tail_verified
    if gm > 0 and r.vanish_order < r.codim_used:
        assert r.asymptotic_verdict is AsymptoticVerdict.EVENTUALLY_NEGATIVE


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 40), min_size=1, max_size=4), st.integers(1, 25), st.integers(2, 60))
def test_fail_at_invariant(tail, c, order):
    h = IntPolynomial([1] + tail)
    r = br_obstruction(user_numerics(h.coefficients, 2, 2 + c), order)
    s = obstruction_series(h, c, order)
    assert r.series == s
    if isinstance(r.verdict, FailAt):
        k = r.verdict.index
        assert s[k] < 0 and min(s.coefficients[:k], default=0) >= 0
    else:
        assert min(s.coefficients) >= 0
