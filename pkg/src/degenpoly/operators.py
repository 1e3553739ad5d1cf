"""The degenerate Euler operator (x d/dx)_{p,L} and D_r = (1/r!) (d/dx)^r x^r.

Both act diagonally on monomials, so the primary implementations multiply
the coefficient of x^k by the eigenvalue.  ``apply_D_r`` also runs the literal
multiply-then-differentiate path and asserts the two agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import XPoly
from .core import falling_factorial_at, stirling2_triangle
from .polys import fubini_poly
from .series import DEFAULT_ORDER, QQ_L, TruncatedSeries, exp_series


@dataclass(frozen=True)
class OperatorSpec:
    kind: str  # "xddx" or "D_r"
    parameter: int

    def __post_init__(self):
        if self.kind not in ("xddx", "D_r"):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.parameter < 0:
            raise ValueError("operator parameter must be nonnegative")

    def __call__(self, f):
        if self.kind == "xddx":
            return apply_xddx_degenerate(self.parameter, f)
        return apply_D_r(self.parameter, f)


def _as_lambda_series(f: TruncatedSeries) -> TruncatedSeries:
    return f if f.ring is QQ_L else f.map(QQ_L.coerce, QQ_L)


def apply_xddx_degenerate(p: int, f):
    """(x d/dx)_{p,L} f: the x^n coefficient is multiplied by (n)_{p,L}."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    if isinstance(f, XPoly):
        return f.map_coefficients(lambda n, c: falling_factorial_at(n, p) * c)
    return _as_lambda_series(f).map_indexed(lambda n, c: falling_factorial_at(n, p) * c)


def D_r_eigenvalue(r: int, k: int) -> int:
    return math.comb(k + r, r)


def _D_r_eigen(r: int, f):
    if isinstance(f, XPoly):
        return f.map_coefficients(lambda k, c: c * D_r_eigenvalue(r, k))
    return f.map_indexed(lambda k, c: c * D_r_eigenvalue(r, k))


def D_r_literal(r: int, f):
    """(1/r!) (d/dx)^r [x^r f], computed by shifting and differentiating."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if isinstance(f, XPoly):
        g = f.shift(r)
        for _ in range(r):
            g = g.derivative()
        return g / math.factorial(r)
    # x^r f needs degrees up to order + r to keep degrees 0..order exact
    order = f.order
    g = f.with_order(order + r).shift(r)
    for _ in range(r):
        g = g.derivative()
    return (g * Fraction(1, math.factorial(r))).with_order(order)


def apply_D_r(r: int, f):
    if r < 0:
        raise ValueError("r must be nonnegative")
    eigen = _D_r_eigen(r, f)
    literal = D_r_literal(r, f)
    if isinstance(f, XPoly):
        agree = eigen == literal
    else:
        agree = eigen.first_difference(literal, stop=f.valid) is None
    if not agree:
        raise AssertionError(f"D_{r} eigenvalue and literal paths disagree")
    return eigen


def xddx_on_exp(p: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """(x d/dx)_{p,L} e^x = sum_n (n)_{p,L} x^n / n!."""
    return apply_xddx_degenerate(p, exp_series(order, QQ_L))


def D_r_on_fubini(r: int, n: int, triangle=None) -> XPoly:
    """D_r F_{n,L}(x) by the literal definition."""
    return D_r_literal(r, fubini_poly(n, triangle))


def D_r_fubini_closed_form(r: int, n: int, triangle=None) -> XPoly:
    """sum_k C(k+r, k) k! S_{2,L}(n, k) x^k."""
    s2 = triangle if triangle is not None else stirling2_triangle(n)
    return XPoly([s2(n, k) * (math.comb(k + r, k) * math.factorial(k)) for k in range(n + 1)])
