from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from degenpoly.arith import (
    LAMBDA,
    X,
    LambdaPoly,
    NotDivisibleByX,
    XPoly,
    lpoly_eval,
    parse_lambda_poly,
    parse_xpoly,
    rat_div,
    rational,
    xpoly_antiderivative_from_zero,
    xpoly_derivative,
    xpoly_divide_by_x,
)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)
lpolys = st.lists(rationals, max_size=5).map(LambdaPoly)
xpolys = st.lists(lpolys, max_size=4).map(XPoly)


# -- rationals ---------------------------------------------------------------

def test_rational_ops():
    assert Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6)
    assert rational("2/4") == Fraction(1, 2)
    assert str(rational("2/4")) == "1/2"
    assert str(rational("-6/3")) == "-2"


def test_division_by_zero_is_an_error():
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        rat_div(Fraction(7, 3), 0)
    with pytest.raises(ZeroDivisionError):
        rational("1/0")


@pytest.mark.parametrize("text", ["", "1.5", "abc", "1//2"])
def test_rational_rejects_garbage(text):
    with pytest.raises(ValueError):
        rational(text)


# -- LambdaPoly --------------------------------------------------------------

def test_lpoly_examples():
    p = LambdaPoly([1, -1]) * LambdaPoly([1, -2])
    assert p == LambdaPoly([1, -3, 2])
    assert p + LambdaPoly() == p
    assert LAMBDA * LAMBDA == LambdaPoly([0, 0, 1])


def test_lpoly_trimmed():
    assert LambdaPoly([1, 0, 0]).coeffs == (Fraction(1),)
    assert LambdaPoly([0, 0]).coeffs == ()
    assert LambdaPoly().degree == -1
    assert (LambdaPoly([1, 1]) - LambdaPoly([1, 1])).coeffs == ()


def test_lpoly_eval_examples():
    p = LambdaPoly([1, -3, 2])
    assert lpoly_eval(p, 0) == 1
    assert lpoly_eval(p, 1) == 0
    assert lpoly_eval(LambdaPoly(), Fraction(7, 3)) == 0


@given(lpolys, lpolys, lpolys)
def test_lpoly_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a * 1 == a and a + 0 == a
    assert a - a == LambdaPoly()


@given(lpolys, lpolys)
def test_lpoly_degree_of_product(a, b):
    if a and b:
        assert (a * b).degree == a.degree + b.degree


@given(lpolys, lpolys, rationals)
def test_eval_is_a_ring_homomorphism(a, b, v):
    assert (a * b).eval(v) == a.eval(v) * b.eval(v)
    assert (a + b).eval(v) == a.eval(v) + b.eval(v)


@given(lpolys)
def test_normalizing_is_idempotent(a):
    assert LambdaPoly(LambdaPoly(a.coeffs).coeffs) == LambdaPoly(a.coeffs)


@given(lpolys)
def test_lpoly_render_round_trip(a):
    assert parse_lambda_poly(a.render()) == a
    assert parse_lambda_poly(a.render(compact=True)) == a


def test_lpoly_rendering():
    assert LambdaPoly([1, -3, 2]).render() == "1 - 3*L + 2*L^2"
    assert LambdaPoly([1, -1]).render(compact=True) == "1-L"
    assert LambdaPoly([0, Fraction(-1, 2)]).render() == "-1/2*L"
    assert LambdaPoly().render() == "0"


# -- XPoly -------------------------------------------------------------------

def test_xpoly_examples():
    assert X * X == XPoly([0, 0, 1])
    assert (X + LAMBDA) * (X - LAMBDA) == XPoly([-(LAMBDA * LAMBDA), 0, 1])
    p = XPoly([LAMBDA, 3, LambdaPoly([1, 1])])
    assert p * 1 == p


@given(xpolys, xpolys, xpolys)
def test_xpoly_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


def test_derivative_examples():
    assert xpoly_derivative(X * X) == X * 2
    assert xpoly_derivative(XPoly([LAMBDA])) == XPoly()
    assert xpoly_derivative(X ** 3 - X * LAMBDA) == XPoly([-LAMBDA, 0, 3])


def test_antiderivative_examples():
    assert xpoly_antiderivative_from_zero(XPoly([1])) == X
    assert xpoly_antiderivative_from_zero(X) == XPoly([0, 0, Fraction(1, 2)])
    p = X * X + X * LAMBDA
    assert xpoly_antiderivative_from_zero(p) == XPoly([0, 0, LAMBDA / 2, Fraction(1, 3)])


@given(xpolys)
def test_derivative_inverts_antiderivative(p):
    assert p.antiderivative().derivative() == p
    assert p.antiderivative().eval_x(0) == LambdaPoly()


def test_divide_by_x():
    assert xpoly_divide_by_x(X * X + X) == X + 1
    assert xpoly_divide_by_x(X) == XPoly([1])
    with pytest.raises(NotDivisibleByX, match="not divisible by x"):
        xpoly_divide_by_x(X + 1)


@given(xpolys)
def test_evaluation_at_zero_is_constant_term(p):
    assert p.eval_x(0) == p.coefficient(0)


@given(xpolys)
def test_xpoly_render_round_trip(p):
    assert parse_xpoly(p.render()) == p


def test_xpoly_rendering():
    assert XPoly([0, LambdaPoly([1, -1]), 1]).render() == "(1-L)*x + x^2"
    assert XPoly([0, -LAMBDA]).render() == "-L*x"
    assert XPoly([Fraction(1, 2), 0, -3]).render() == "1/2 - 3*x^2"
    assert XPoly().render() == "0"
