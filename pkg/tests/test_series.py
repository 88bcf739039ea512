import pytest
import sympy
from hypothesis import given, strategies as st

from symred.series import (PoleAtZero, UniRationalFunction, one_minus_t, ratfun_identity_check,
                           series_expand, uformat, umul, uparse, uprod)

t = sympy.Symbol("t")
coeff_lists = st.lists(st.integers(-4, 4), min_size=1, max_size=5)


@given(coeff_lists, coeff_lists.filter(lambda c: c[0] != 0))
def test_series_matches_sympy(num, den):
    f = UniRationalFunction.make(num, den)
    expr = sum(c * t ** i for i, c in enumerate(num)) / sum(c * t ** i for i, c in enumerate(den))
    ser = sympy.series(expr, t, 0, 7).removeO()
    expected = [sympy.Rational(ser.coeff(t, k)) for k in range(7)]
    got = series_expand(f, 6)
    assert [sympy.Rational(int(c.numerator), int(c.denominator)) for c in got] == expected


@given(coeff_lists, coeff_lists)
def test_polynomial_product_and_text(a, b):
    p = umul(a, b)
    pa = sum(c * t ** i for i, c in enumerate(a))
    pb = sum(c * t ** i for i, c in enumerate(b))
    prod = sympy.Poly(sympy.expand(pa * pb), t).all_coeffs()[::-1] if sympy.expand(pa * pb) != 0 else []
    assert [int(c) for c in p] == [int(c) for c in prod]
    assert uparse(uformat(p)) == p


def test_geometric_series():
    f = UniRationalFunction.make([1], one_minus_t(2))
    assert series_expand(f, 6) == [1, 0, 1, 0, 1, 0, 1]


def test_pole_at_zero():
    with pytest.raises(PoleAtZero):
        series_expand(UniRationalFunction.make([1], [0, 1]), 3)


def test_identity_check():
    f = UniRationalFunction.make([1, 1], uprod([one_minus_t(1), one_minus_t(2)]))
    # (1+t) / ((1-t)(1-t^2)) = 1 / (1-t)^2
    assert ratfun_identity_check(f, umul(one_minus_t(1), one_minus_t(1)), [1])
    assert not ratfun_identity_check(f, one_minus_t(1), [1])
