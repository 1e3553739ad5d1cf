"""Independent reference computations used only by the tests."""

import math
from fractions import Fraction

import sympy as sp

from degenpoly.arith import LAMBDA, LambdaPoly, XPoly
from degenpoly.series import QQ_L, TruncatedSeries

L_SYM, T_SYM = sp.symbols("L t")


def set_partitions(items):
    """Yield every set partition of ``items`` as a list of blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]
        yield [[first]] + partition


def ordered_set_partitions(items):
    """Yield every ordered set partition: a nonempty first block, then the rest."""
    if not items:
        yield []
        return
    n = len(items)
    for mask in range(1, 1 << n):
        block = [items[i] for i in range(n) if mask >> i & 1]
        rest = [items[i] for i in range(n) if not mask >> i & 1]
        for tail in ordered_set_partitions(rest):
            yield [block] + tail


def bell_number(n):
    return sum(1 for _ in set_partitions(list(range(n))))


def fubini_number(n):
    return sum(1 for _ in ordered_set_partitions(list(range(n))))


def classical_stirling2(n_max):
    s = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    s[0][0] = 1
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            s[n][k] = s[n - 1][k - 1] + k * s[n - 1][k]
    return s


def classical_stirling1_signed(n_max):
    s = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    s[0][0] = 1
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            s[n][k] = s[n - 1][k - 1] - (n - 1) * s[n - 1][k]
    return s


def xddx_literal(p, f):
    """(x d/dx)(x d/dx - L) ... (x d/dx - (p-1) L) f, one factor at a time."""
    if isinstance(f, XPoly):
        for j in reversed(range(p)):
            f = f.derivative().shift(1) - f * (LAMBDA * j)
        return f
    f = f if f.ring is QQ_L else f.map(LambdaPoly.coerce, QQ_L)
    order = f.order
    for j in reversed(range(p)):
        # x f' through degree `order` needs f through `order` only
        f = f.with_order(order + 1).derivative().shift(1).with_order(order) - f * (LAMBDA * j)
    return f


def naive_exp(f):
    """sum_{k=0}^N f^k / k!."""
    total = TruncatedSeries.one(f.order, f.ring)
    power = TruncatedSeries.one(f.order, f.ring)
    for k in range(1, f.order + 1):
        power = power * f
        total = total + power * Fraction(1, math.factorial(k))
    return total


def naive_log1p(f):
    """sum_{k=1}^N (-1)^(k+1) f^k / k."""
    total = TruncatedSeries.zero(f.order, f.ring)
    power = TruncatedSeries.one(f.order, f.ring)
    for k in range(1, f.order + 1):
        power = power * f
        total = total + power * Fraction((-1) ** (k + 1), k)
    return total


def from_sympy(expr) -> LambdaPoly:
    poly = sp.Poly(sp.expand(expr), L_SYM)
    if poly.is_zero:
        return LambdaPoly()
    coeffs = [0] * (poly.degree() + 1)
    for (k,), c in poly.terms():
        coeffs[k] = Fraction(int(c.p), int(c.q))
    return LambdaPoly(coeffs)


def sympy_egf_triangle(kind, n_max):
    """Stirling triangle from the closed forms e_L(t) = (1 + L t)^(1/L), log_L(1 + t) = ((1 + t)^L - 1)/L."""
    if kind == "second":
        base = (1 + L_SYM * T_SYM) ** (1 / L_SYM) - 1
    else:
        base = ((1 + T_SYM) ** L_SYM - 1) / L_SYM
    series = sp.series(base, T_SYM, 0, n_max + 1).removeO()
    series = sp.expand(sp.simplify(series))
    rows = [[LambdaPoly()] * (n + 1) for n in range(n_max + 1)]
    power = sp.Integer(1)
    for k in range(n_max + 1):
        if k:
            power = sp.expand(power * series)
            power = sum(power.coeff(T_SYM, j) * T_SYM ** j for j in range(n_max + 1))
        for n in range(k, n_max + 1):
            rows[n][k] = from_sympy(power.coeff(T_SYM, n) * sp.factorial(n) / sp.factorial(k))
    return rows
