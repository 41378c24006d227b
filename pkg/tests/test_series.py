from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from koszulkit.errors import ZeroPolynomial
from koszulkit.series import IntPolynomial, TruncatedSeries, eval_int, expand_rational_series, factor_out_neg_one

coeffs = st.lists(st.integers(-1000, 1000), min_size=0, max_size=21)


def test_trailing_zeros_trimmed():
    p = IntPolynomial([1, 2, 0, 0])
    assert p.coefficients == (1, 2)
    assert p.degree == 1
    assert IntPolynomial([0, 0]).is_zero()
    assert IntPolynomial().degree == -1


def test_geometric_series():
    assert list(expand_rational_series(IntPolynomial([1]), 1, 3)) == [1, 1, 1, 1]


def test_one_plus_z_over_square():
    assert list(expand_rational_series(IntPolynomial([1, 1]), 2, 3)) == [1, 3, 5, 7]


def test_c_zero_returns_prefix():
    s = expand_rational_series(IntPolynomial([4, 5, 6]), 0, 4)
    assert list(s) == [4, 5, 6, 0, 0]
    assert list(expand_rational_series(IntPolynomial([4, 5, 6]), 0, 1)) == [4, 5]


def test_truncated_series_length_checked():
    with pytest.raises(ValueError):
        TruncatedSeries((1, 2), 3)


def test_factor_out_neg_one_examples():
    assert factor_out_neg_one(IntPolynomial([1, 1])) == (1, IntPolynomial([1]))
    p = IntPolynomial.one_plus_z_power(2) * IntPolynomial([1, 2])
    assert factor_out_neg_one(p) == (2, IntPolynomial([1, 2]))
    with pytest.raises(ZeroPolynomial):
        factor_out_neg_one(IntPolynomial())


def test_eval_examples():
    h72 = IntPolynomial([1, 21, 35, 7])
    assert eval_int(h72, -1) == 8
    assert eval_int(IntPolynomial([1, 30, 45, 5]), -1) == 11
    assert h72(1) == 64 == 2**6


def test_str_rendering():
    assert str(IntPolynomial([1, -3, 0, 1])) == "1 - 3z + z^3"
    assert str(IntPolynomial([0, -1])) == "-z"
    assert str(IntPolynomial()) == "0"


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs, st.integers(0, 6), st.integers(0, 25))
def test_expansion_is_multiplicative(p, q, c, N):
    P, Q = IntPolynomial(p), IntPolynomial(q)
    left = expand_rational_series(P * Q, c, N)
    a = expand_rational_series(P, c, N)
    b = expand_rational_series(Q, 0, N)
    cauchy = [sum(a[j] * b[k - j] for j in range(k + 1)) for k in range(N + 1)]
    assert list(left) == cauchy


@settings(max_examples=60, deadline=None)
@given(coeffs, st.integers(0, 6), st.integers(0, 25))
def test_expansion_iterates(p, c, N):
    P = IntPolynomial(p)
    s = expand_rational_series(P, 0, N).as_polynomial()
    for _ in range(c):
        s = expand_rational_series(s, 1, N).as_polynomial()
    assert list(expand_rational_series(P, c, N)) == list(s) + [0] * (N + 1 - len(s))


@settings(max_examples=60, deadline=None)
@given(coeffs.filter(lambda c: any(c)), st.integers(0, 5))
def test_factor_round_trip(p, extra):
    P = IntPolynomial(p) * IntPolynomial.one_plus_z_power(extra)
    a, g = factor_out_neg_one(P)
    assert a >= extra
    assert eval_int(g, -1) != 0
    assert IntPolynomial.one_plus_z_power(a) * g == P


@given(st.integers(1, 12), st.integers(0, 30))
def test_expansion_binomial_formula(c, k):
    assert expand_rational_series(IntPolynomial([1]), c, k)[k] == comb(c - 1 + k, c - 1)
