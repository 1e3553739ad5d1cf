import json
import math
from fractions import Fraction

import pytest

from degenpoly.arith import LAMBDA, X, LambdaPoly, XPoly
from degenpoly.core import (
    Kind,
    degenerate_exp1_series,
    degenerate_exp_series,
    degenerate_log_series,
    degenerate_polylog_series,
    falling_factorial,
    falling_factorial_at,
    falling_factorial_degenerate,
    one_n_lambda,
    stirling1_triangle,
    stirling2_from_egf,
    stirling2_triangle,
    sum_falling,
)
from degenpoly.series import QQ_L, TruncatedSeries

from oracles import classical_stirling1_signed, classical_stirling2, sympy_egf_triangle

L = LAMBDA


def lp(*coeffs):
    return LambdaPoly(coeffs)


def test_falling_factorial_degenerate():
    assert falling_factorial_degenerate(0) == XPoly([1])
    assert falling_factorial_degenerate(1) == X
    assert falling_factorial_degenerate(2) == XPoly([0, -L, 1])
    assert falling_factorial_degenerate(5).degree == 5


def test_falling_factorial_at_lambda_one_is_ordinary():
    for n in range(7):
        assert falling_factorial_degenerate(n).map_coefficients(lambda k, c: c.eval(1)) == falling_factorial(n)


def test_one_n_lambda():
    assert one_n_lambda(0) == lp(1)
    assert one_n_lambda(1) == lp(1)
    assert one_n_lambda(3) == lp(1, -3, 2)
    assert all(one_n_lambda(n).eval(0) == 1 for n in range(10))


def test_falling_factorial_at():
    for k in range(6):
        assert falling_factorial_at(k, 1) == lp(k)
    assert falling_factorial_at(2, 2) == lp(4, -2)
    # (1 - L)_{2,L} = (1)_{2,L} (1 - 2L)
    assert falling_factorial_at(lp(1, -1), 2) == one_n_lambda(2) * lp(1, -2)
    assert falling_factorial_at(lp(1, -1), 2) == lp(1, -1) * lp(1, -2)


@pytest.mark.parametrize("m", range(8))
def test_shifted_falling_factorial_identity(m):
    assert falling_factorial_at(lp(1, -1), m) == one_n_lambda(m) * lp(1, -m)


def test_degenerate_exp_series():
    e = degenerate_exp1_series(8)
    assert e[0] == lp(1)
    assert e[2] == lp(Fraction(1, 2), Fraction(-1, 2))
    assert e.specialize(0) == TruncatedSeries.from_function(lambda n: Fraction(1, math.factorial(n)), 8)
    ex = degenerate_exp_series(4)
    assert ex[0] == XPoly([1])
    assert ex[3] == falling_factorial_degenerate(3) / 6


def test_degenerate_log_series():
    g = degenerate_log_series(8)
    assert g[0] == LambdaPoly()
    assert g[1] == lp(1)
    assert g[2] == lp(Fraction(-1, 2), Fraction(1, 2))
    classical = g.specialize(0)
    for n in range(1, 9):
        assert classical[n] == Fraction((-1) ** (n - 1), n)


def test_degenerate_polylog_series():
    n = 12
    li1 = degenerate_polylog_series(1, n)
    minus_t = TruncatedSeries([0, -1], n, QQ_L)
    assert li1 == -degenerate_log_series(n).compose(minus_t)
    for k in (-2, 0, 1, 2, 5):
        assert degenerate_polylog_series(k, n)[1] == lp(1)
    li2 = degenerate_polylog_series(2, n).specialize(0)
    assert all(li2[m] == Fraction(1, m * m) for m in range(1, n + 1))


def test_polylog_negative_index_weights():
    li = degenerate_polylog_series(-1, 4).specialize(0)
    assert [li[m] for m in range(1, 5)] == [1, 2, 3, 4]


def test_stirling2_examples():
    s2 = stirling2_triangle(6)
    assert s2(1, 1) == lp(1)
    assert s2(2, 1) == lp(1, -1)
    assert s2(4, 2).eval(0) == 7
    assert s2(4, 2) == lp(7, -18, 11)
    assert s2(3, 5) == LambdaPoly() and s2(2, -1) == LambdaPoly()


def test_stirling1_examples():
    s1 = stirling1_triangle(6)
    assert all(s1(n, n) == lp(1) for n in range(7))
    assert s1(2, 1) == lp(-1, 1)
    assert s1(3, 1).eval(0) == 2
    assert s1(4, 2) == lp(11, -18, 7)


@pytest.mark.parametrize("build", [stirling1_triangle, stirling2_triangle, stirling2_from_egf])
def test_triangle_boundaries(build):
    tri = build(10)
    assert tri(0, 0) == lp(1)
    for n in range(1, 11):
        assert tri(n, 0) == LambdaPoly()
        assert tri(n, n) == lp(1)


def test_stirling2_lambda_degree_bound():
    s2 = stirling2_triangle(10)
    for n in range(11):
        for k in range(n + 1):
            assert s2(n, k).degree <= n - k


def test_triangle_constructions_agree():
    assert stirling2_triangle(12).first_difference(stirling2_from_egf(12)) is None
    assert stirling2_from_egf(3)(3, 3) == lp(1)


@pytest.mark.parametrize("kind,build", [("first", stirling1_triangle), ("second", stirling2_triangle)])
def test_triangles_match_sympy_closed_forms(kind, build):
    oracle = sympy_egf_triangle(kind, 6)
    tri = build(6)
    for n in range(7):
        for k in range(n + 1):
            assert tri(n, k) == oracle[n][k], (n, k)


def test_classical_specialization():
    c2, c1 = classical_stirling2(12), classical_stirling1_signed(12)
    assert stirling2_triangle(12).specialize(0) == [row[: n + 1] for n, row in enumerate(c2)]
    assert stirling1_triangle(12).specialize(0) == [row[: n + 1] for n, row in enumerate(c1)]


@pytest.mark.parametrize("n", range(13))
def test_falling_factorial_expansions(n):
    s1, s2 = stirling1_triangle(12), stirling2_triangle(12)
    assert falling_factorial(n) == sum((falling_factorial_degenerate(k) * s1(n, k) for k in range(n + 1)), XPoly())
    assert falling_factorial_degenerate(n) == sum((falling_factorial(k) * s2(n, k) for k in range(n + 1)), XPoly())


def test_inversion():
    s1, s2 = stirling1_triangle(12), stirling2_triangle(12)
    for n in range(13):
        for m in range(13):
            delta = lp(1) if n == m else LambdaPoly()
            assert sum((s1(n, k) * s2(k, m) for k in range(13)), LambdaPoly()) == delta
            assert sum((s2(n, k) * s1(k, m) for k in range(13)), LambdaPoly()) == delta


def test_sum_falling():
    for n in (1, 2, 7, 100):
        assert sum_falling(1, n) == lp(n * (n + 1) // 2)
    for p in range(1, 5):
        assert sum_falling(p, 1) == one_n_lambda(p)
    assert sum_falling(2, 2) == lp(5, -3)
    assert sum_falling(3, 0) == LambdaPoly()


def test_triangle_serialization():
    tri = stirling2_triangle(3)
    doc = json.loads(tri.to_json())
    assert doc["kind"] == "second" and doc["n_max"] == 3
    assert doc["entries"][2] == ["0", "1-L", "1"]
    assert json.loads(tri.to_json(lam=0))["entries"][3] == ["0", "1", "3", "1"]
    lines = tri.to_csv().splitlines()
    assert lines[0] == "n,k,value"
    assert "2,1,1-L" in lines
    assert tri.kind is Kind.SECOND


def test_perturbed_copy_leaves_original():
    tri = stirling2_triangle(6)
    bumped = tri.perturbed(5, 3)
    assert bumped(5, 3) == tri(5, 3) + 1
    assert tri.first_difference(bumped) == (5, 3)
