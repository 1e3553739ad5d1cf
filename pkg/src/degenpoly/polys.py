"""Degenerate Bell and Fubini polynomials."""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .arith import LAMBDA_ONE, XPoly
from .core import StirlingTriangle, degenerate_exp1_series, falling_factorial_at, stirling2_triangle
from .report import Failure, VerdictReport
from .series import DEFAULT_ORDER, QQ_L, QQ_L_X, TruncatedSeries, exp_series


def _triangle_for(n: int, triangle: StirlingTriangle | None) -> StirlingTriangle:
    if triangle is None:
        return stirling2_triangle(n)
    if n > triangle.n_max:
        raise ValueError(f"n={n} exceeds triangle n_max={triangle.n_max}")
    return triangle


def bell_poly(n: int, triangle: StirlingTriangle | None = None) -> XPoly:
    """phi_{n,L}(x) = sum_k S_{2,L}(n, k) x^k."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    s2 = _triangle_for(n, triangle)
    return XPoly([s2(n, k) for k in range(n + 1)])


def fubini_poly(n: int, triangle: StirlingTriangle | None = None) -> XPoly:
    """F_{n,L}(x) = sum_k k! S_{2,L}(n, k) x^k."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    s2 = _triangle_for(n, triangle)
    return XPoly([s2(n, k) * math.factorial(k) for k in range(n + 1)])


@dataclass(frozen=True)
class PolyFamily:
    name: str
    n_max: int
    polys: tuple

    def __getitem__(self, n: int) -> XPoly:
        return self.polys[n]

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


BellFamily = FubiniFamily = PolyFamily


def bell_family(n_max: int, triangle: StirlingTriangle | None = None) -> PolyFamily:
    s2 = _triangle_for(n_max, triangle)
    return PolyFamily("bell", n_max, tuple(bell_poly(n, s2) for n in range(n_max + 1)))


def fubini_family(n_max: int, triangle: StirlingTriangle | None = None) -> PolyFamily:
    s2 = _triangle_for(n_max, triangle)
    return PolyFamily("fubini", n_max, tuple(fubini_poly(n, s2) for n in range(n_max + 1)))


def _x_times_exp1_minus_one(order: int) -> TruncatedSeries:
    """x (e_L(t) - 1) as a series in t over QQ[L][x]."""
    e1 = degenerate_exp1_series(order) - LAMBDA_ONE
    return e1.map(lambda c: XPoly((0, c)), QQ_L_X)


def bell_family_from_egf(n_max: int, order: int | None = None) -> PolyFamily:
    """phi_{n,L} read off exp(x (e_L(t) - 1)) = sum phi_{n,L}(x) t^n / n!."""
    order = n_max if order is None else order
    if order < n_max:
        raise ValueError("order must be at least n_max")
    egf = _x_times_exp1_minus_one(order).exp().unscale_egf()
    return PolyFamily("bell", n_max, egf.coeffs[: n_max + 1])


def fubini_family_from_ogf(n_max: int, order: int | None = None) -> PolyFamily:
    """F_{n,L} read off 1 / (1 - x (e_L(t) - 1)) = sum F_{n,L}(x) t^n / n!."""
    order = n_max if order is None else order
    if order < n_max:
        raise ValueError("order must be at least n_max")
    egf = (1 - _x_times_exp1_minus_one(order)).inverse().unscale_egf()
    return PolyFamily("fubini", n_max, egf.coeffs[: n_max + 1])


def poly_to_json(n: int, p: XPoly) -> str:
    return json.dumps({"n": n, "coeffs": [c.render(compact=True) for c in p.coeffs]})


def dobinski_sides(phi: XPoly, n: int, order: int = DEFAULT_ORDER):
    """(e^x phi_{n,L}(x), sum_k (k)_{n,L} x^k / k!) as series over QQ[L]."""
    lhs = exp_series(order, QQ_L) * TruncatedSeries.from_xpoly(phi, order)
    rhs = TruncatedSeries.from_function(
        lambda k: falling_factorial_at(k, n) * Fraction(1, math.factorial(k)), order, QQ_L)
    return lhs, rhs


def bell_dobinski_check(n: int, order: int = DEFAULT_ORDER,
                        triangle: StirlingTriangle | None = None) -> VerdictReport:
    """e^x phi_{n,L}(x) against sum_k (k)_{n,L} x^k / k!, degrees 0..order."""
    if n < 0 or order < n:
        raise ValueError("need 0 <= n <= order")
    start = time.perf_counter()
    lhs, rhs = dobinski_sides(bell_poly(n, triangle), n, order)
    k = lhs.first_difference(rhs)
    failure = None if k is None else Failure(k, str(lhs[k]), str(rhs[k]))
    return VerdictReport("bell_dobinski", {"n": n, "N": order}, k is None, failure,
                         (time.perf_counter() - start) * 1000)
