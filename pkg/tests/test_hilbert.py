import random
from math import comb

import pytest

from koszulkit.errors import InvalidRange, UsageError
from koszulkit.hilbert import (
    AlgebraNumerics,
    hilbert_function_value,
    segre_numerics,
    tensor_numerics,
    user_numerics,
    veronese_numerics,
)
from koszulkit.series import IntPolynomial, eval_int, factor_out_neg_one


@pytest.mark.parametrize(
    "n,c,h",
    [
        (7, 2, [1, 21, 35, 7]),
        (5, 3, [1, 30, 45, 5]),
        (5, 4, [1, 65, 155, 35]),
        (6, 7, [1, 786, 6891, 7872, 1251, 6]),
        (2, 3, [1, 2]),
    ],
)
def test_veronese_h(n, c, h):
    assert list(veronese_numerics(n, c).h_poly) == h


def test_veronese_2_3_record():
    a = veronese_numerics(2, 3)
    assert (a.dim, a.multiplicity, a.embdim, a.codim) == (2, 3, 4, 2)


def test_segre_examples():
    a = segre_numerics(3, 6)
    assert list(a.h_poly) == [1, 10, 10] and a.multiplicity == 21
    assert list(segre_numerics(2, 2).h_poly) == [1, 1]
    assert list(segre_numerics(1, 5).h_poly) == [1]
    with pytest.raises(InvalidRange):
        segre_numerics(4, 3)


def test_invalid_veronese():
    with pytest.raises(InvalidRange):
        veronese_numerics(3, 1)


def test_hilbert_function_values():
    assert hilbert_function_value(veronese_numerics(3, 2), 2) == 15
    assert hilbert_function_value(segre_numerics(3, 6), 1) == 18
    assert hilbert_function_value(segre_numerics(2, 4), 0) == 1


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("c", range(2, 9))
def test_veronese_hilbert_partial_sums(n, c):
    a = veronese_numerics(n, c)
    direct = [comb(n - 1 + i * c, n - 1) for i in range(n + 5)]
    assert [hilbert_function_value(a, i) for i in range(n + 5)] == direct
    assert a.multiplicity == c ** (n - 1)
    assert a.h_poly.degree < n


@pytest.mark.parametrize("m", range(1, 7))
def test_segre_multiplicity(m):
    for n in range(m, 9):
        assert segre_numerics(m, n).multiplicity == comb(m + n - 2, m - 1)


def test_complete_intersection_flags():
    # k[x,y]^(2) is k[a,b,c]/(ac - b^2): a hypersurface
    assert veronese_numerics(2, 2).is_complete_intersection is True
    assert veronese_numerics(3, 2).is_complete_intersection is False
    assert segre_numerics(2, 2).is_complete_intersection is True
    assert segre_numerics(2, 3).is_complete_intersection is False


def test_numerics_validation():
    with pytest.raises(UsageError):
        AlgebraNumerics(IntPolynomial([2, 1]), 1, 2)
    with pytest.raises(UsageError):
        AlgebraNumerics(IntPolynomial([1]), 3, 2)
    a = user_numerics([1, 3, 1], 2, 5)
    assert (a.codim, a.multiplicity) == (3, 5)


def test_tensor_product():
    a = user_numerics([1, 1], 1, 2, True)
    t = tensor_numerics(a, a)
    assert list(t.h_poly) == [1, 2, 1]
    assert (t.dim, t.embdim, t.multiplicity, t.is_complete_intersection) == (2, 4, 4, True)
    assert tensor_numerics(a, user_numerics([1], 0, 0)).is_complete_intersection is None


def test_tensor_g_at_minus_one_multiplies():
    rng = random.Random(7)
    for _ in range(10):
        h1 = [1] + [rng.randint(0, 30) for _ in range(rng.randint(1, 4))]
        h2 = [1] + [rng.randint(0, 30) for _ in range(rng.randint(1, 4))]
        a, b = user_numerics(h1, 4, 9), user_numerics(h2, 4, 9)
        t = tensor_numerics(a, b)
        ga = eval_int(factor_out_neg_one(a.h_poly)[1], -1)
        gb = eval_int(factor_out_neg_one(b.h_poly)[1], -1)
        assert eval_int(factor_out_neg_one(t.h_poly)[1], -1) == ga * gb


def test_veronese_square_tensor():
    v = veronese_numerics(7, 2)
    t = tensor_numerics(v, v)
    assert eval_int(factor_out_neg_one(t.h_poly)[1], -1) == 64


def test_open_question_multiplicities():
    a, b = veronese_numerics(4, 4), veronese_numerics(6, 2)
    assert (a.multiplicity, a.codim) == (64, 31)
    assert (b.multiplicity, b.codim) == (32, 15)
