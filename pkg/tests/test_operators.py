from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from degenpoly.arith import LAMBDA, X, LambdaPoly, XPoly
from degenpoly.core import falling_factorial_at
from degenpoly.operators import (
    D_r_eigenvalue,
    D_r_fubini_closed_form,
    D_r_literal,
    D_r_on_fubini,
    OperatorSpec,
    apply_D_r,
    apply_xddx_degenerate,
    xddx_on_exp,
)
from degenpoly.series import QQ, QQ_L, TruncatedSeries

from oracles import xddx_literal

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
lpolys = st.lists(small, max_size=3).map(LambdaPoly)
xpolys = st.lists(lpolys, max_size=6).map(XPoly)


def test_xddx_examples():
    assert apply_xddx_degenerate(1, X * X) == X * X * 2
    assert apply_xddx_degenerate(2, X * X) == XPoly([0, 0, LambdaPoly([4, -2])])
    assert apply_xddx_degenerate(0, X + 1) == X + 1
    assert apply_xddx_degenerate(3, XPoly([5])) == XPoly()


def test_D_r_examples():
    assert D_r_eigenvalue(2, 3) == 10
    assert apply_D_r(1, X) == X * 2
    assert apply_D_r(2, X * X) == X * X * 6
    assert apply_D_r(0, X + 1) == X + 1
    assert D_r_literal(3, XPoly([1])) == XPoly([1])


@pytest.mark.parametrize("p", range(7))
def test_xddx_paths_agree_on_monomials(p):
    for k in range(17):
        mono = XPoly.monomial(k, 1)
        assert apply_xddx_degenerate(p, mono) == xddx_literal(p, mono)
        assert apply_xddx_degenerate(p, mono) == XPoly.monomial(k, falling_factorial_at(k, p))


@pytest.mark.parametrize("r", range(7))
def test_D_r_paths_agree_on_monomials(r):
    for k in range(17):
        mono = XPoly.monomial(k, 1)
        assert D_r_literal(r, mono) == XPoly.monomial(k, D_r_eigenvalue(r, k))


def test_paths_agree_on_series():
    f = TruncatedSeries.from_function(lambda n: Fraction(1, n + 1), 16)
    for p in range(7):
        assert apply_xddx_degenerate(p, f) == xddx_literal(p, f)
    for r in range(7):
        apply_D_r(r, f)
        assert D_r_literal(r, f).order == 16


@settings(max_examples=30, deadline=None)
@given(xpolys, xpolys, small, st.integers(0, 5))
def test_operators_are_linear(f, g, c, p):
    assert apply_xddx_degenerate(p, f + g * c) == apply_xddx_degenerate(p, f) + apply_xddx_degenerate(p, g) * c
    assert apply_D_r(p, f + g * c) == apply_D_r(p, f) + apply_D_r(p, g) * c


@settings(max_examples=30, deadline=None)
@given(xpolys, st.integers(0, 5))
def test_xddx_matches_literal_on_random_polys(f, p):
    assert apply_xddx_degenerate(p, f) == xddx_literal(p, f)


def test_xddx_on_exp():
    s = xddx_on_exp(2, 6)
    assert s.ring is QQ_L
    assert s[0] == LambdaPoly()
    assert s[1] == LambdaPoly([1, -1])
    assert s[2] == LambdaPoly([2, -1])
    assert apply_xddx_degenerate(1, TruncatedSeries([1, 1, 1], 2, QQ)) == TruncatedSeries(
        [0, 1, 2], 2, QQ_L)


def test_D_r_on_fubini():
    expected = XPoly([0, LambdaPoly([2, -2]), 6])
    assert D_r_on_fubini(1, 2) == expected
    for r in range(5):
        for n in range(9):
            assert D_r_on_fubini(r, n) == D_r_fubini_closed_form(r, n)


def test_operator_spec():
    assert OperatorSpec("xddx", 2)(X * X) == XPoly([0, 0, 4 - 2 * LAMBDA])
    assert OperatorSpec("D_r", 1)(X) == X * 2
    with pytest.raises(ValueError):
        OperatorSpec("curl", 1)
    with pytest.raises(ValueError):
        apply_xddx_degenerate(-1, X)
    with pytest.raises(ValueError):
        D_r_literal(-1, X)
