"""Falling factorials, degenerate exp/log/polylog series and Stirling triangles."""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import LAMBDA, LAMBDA_ONE, LAMBDA_ZERO, X, XPOLY_ONE, LambdaPoly, XPoly, rational
from .series import DEFAULT_ORDER, QQ_L, QQ_L_X, TruncatedSeries


@lru_cache(maxsize=None)
def falling_factorial_degenerate(n: int) -> XPoly:
    """(x)_{n,L} = x (x - L) ... (x - (n-1) L)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return XPOLY_ONE
    return falling_factorial_degenerate(n - 1) * (X - LAMBDA * (n - 1))


@lru_cache(maxsize=None)
def falling_factorial(n: int) -> XPoly:
    """The ordinary falling factorial (x)_n = x (x - 1) ... (x - n + 1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return XPOLY_ONE
    return falling_factorial(n - 1) * (X - (n - 1))


def falling_factorial_at(v, p: int) -> LambdaPoly:
    """(v)_{p,L} for a rational or L-polynomial ``v``."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    v = LambdaPoly.coerce(v if isinstance(v, LambdaPoly) else rational(v))
    if v.is_constant():
        return _falling_at_const(v.coefficient(0), p)
    result = LAMBDA_ONE
    for j in range(p):
        result = result * (v - LAMBDA * j)
    return result


@lru_cache(maxsize=4096)
def _falling_at_const(v: Fraction, p: int) -> LambdaPoly:
    if p == 0:
        return LAMBDA_ONE
    return _falling_at_const(v, p - 1) * LambdaPoly((v, -(p - 1)))


def one_n_lambda(n: int) -> LambdaPoly:
    """(1)_{n,L} = prod_{j<n} (1 - j L)."""
    return falling_factorial_at(1, n)


@lru_cache(maxsize=None)
def _lambda_minus_range(n: int) -> LambdaPoly:
    """prod_{j=1}^{n-1} (L - j); this is L^{n-1} (1)_{n,1/L} without forming 1/L."""
    result = LAMBDA_ONE
    for j in range(1, n):
        result = result * LambdaPoly((-j, 1))
    return result


def degenerate_exp_series(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """e_L^x(t) over QQ[L][x]: coefficient of t^n is (x)_{n,L} / n!."""
    return TruncatedSeries.from_function(
        lambda n: falling_factorial_degenerate(n) / math.factorial(n), order, QQ_L_X)


def degenerate_exp1_series(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """e_L(t) over QQ[L]: coefficient of t^n is (1)_{n,L} / n!."""
    return TruncatedSeries.from_function(
        lambda n: one_n_lambda(n) / math.factorial(n), order, QQ_L)


def degenerate_log_series(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """log_L(1 + t), the compositional inverse of e_L(t) - 1."""
    return TruncatedSeries.from_function(
        lambda n: _lambda_minus_range(n) / math.factorial(n) if n else LAMBDA_ZERO, order, QQ_L)


def polylog_coefficient(k: int, n: int) -> LambdaPoly:
    """Coefficient of t^n (n >= 1) in Li_{k,L}(t); ``k`` may be any integer."""
    if n < 1:
        raise ValueError("n must be positive")
    sign = -1 if (n - 1) % 2 else 1
    weight = Fraction(n) ** (-k)
    return _lambda_minus_range(n) * (sign * weight / math.factorial(n - 1))


def degenerate_polylog_series(k: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Li_{k,L}(t)."""
    return TruncatedSeries.from_function(
        lambda n: polylog_coefficient(k, n) if n else LAMBDA_ZERO, order, QQ_L)


class Kind(str, enum.Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class StirlingTriangle:
    kind: Kind
    n_max: int
    entries: tuple  # entries[n][k] for 0 <= k <= n <= n_max

    def __call__(self, n: int, k: int) -> LambdaPoly:
        if n < 0 or k < 0 or k > n:
            return LAMBDA_ZERO
        if n > self.n_max:
            raise IndexError(f"row {n} beyond n_max={self.n_max}")
        return self.entries[n][k]

    entry = __call__

    def row(self, n: int) -> tuple:
        return self.entries[n]

    def specialize(self, lam) -> list:
        """Rows with L replaced by the rational ``lam``."""
        return [[e.eval(lam) for e in row] for row in self.entries]

    def first_difference(self, other: "StirlingTriangle"):
        """First (n, k) where the two triangles differ, or None."""
        for n in range(min(self.n_max, other.n_max) + 1):
            for k in range(n + 1):
                if self(n, k) != other(n, k):
                    return (n, k)
        return None

    def perturbed(self, n: int, k: int, delta=1) -> "StirlingTriangle":
        """Copy with one entry shifted by ``delta``; used for negative controls."""
        rows = [list(r) for r in self.entries]
        rows[n][k] = rows[n][k] + delta
        return StirlingTriangle(self.kind, self.n_max, tuple(tuple(r) for r in rows))

    def _rendered_rows(self, lam=None):
        if lam is None:
            return [[e.render(compact=True) for e in row] for row in self.entries]
        return [[str(e.eval(lam)) for e in row] for row in self.entries]

    def to_json(self, lam=None) -> str:
        return json.dumps({
            "kind": Kind(self.kind).value,
            "n_max": self.n_max,
            "entries": self._rendered_rows(lam),
        })

    def to_csv(self, lam=None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "k", "value"])
        for n, row in enumerate(self._rendered_rows(lam)):
            for k, value in enumerate(row):
                writer.writerow([n, k, value])
        return buf.getvalue()

    def to_text(self, lam=None) -> str:
        return "\n".join(", ".join(row) for row in self._rendered_rows(lam))


@lru_cache(maxsize=None)
def stirling2_triangle(n_max: int) -> StirlingTriangle:
    """S_{2,L}(n, k) from S(n+1, k) = S(n, k-1) + (k - n L) S(n, k)."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    rows = [(LAMBDA_ONE,)]
    for n in range(n_max):
        prev = rows[-1]

        def s(k, prev=prev):
            return prev[k] if 0 <= k < len(prev) else LAMBDA_ZERO

        rows.append(tuple(s(k - 1) + LambdaPoly((k, -n)) * s(k) for k in range(n + 2)))
    return StirlingTriangle(Kind.SECOND, n_max, tuple(rows))


def _triangle_from_powers(kind: Kind, base: TruncatedSeries, n_max: int) -> StirlingTriangle:
    """S(n, k) = n! [t^n] base^k / k!."""
    rows = [[LAMBDA_ZERO] * (n + 1) for n in range(n_max + 1)]
    power = TruncatedSeries.one(n_max, QQ_L)
    for k in range(n_max + 1):
        if k:
            power = power * base
        for n in range(k, n_max + 1):
            rows[n][k] = power[n] * Fraction(math.factorial(n), math.factorial(k))
    return StirlingTriangle(kind, n_max, tuple(tuple(r) for r in rows))


@lru_cache(maxsize=None)
def stirling2_from_egf(n_max: int) -> StirlingTriangle:
    """S_{2,L}(n, k) extracted from (e_L(t) - 1)^k / k!."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    return _triangle_from_powers(Kind.SECOND, degenerate_exp1_series(n_max) - LAMBDA_ONE, n_max)


@lru_cache(maxsize=None)
def stirling1_triangle(n_max: int) -> StirlingTriangle:
    """S_{1,L}(n, k) extracted from (log_L(1 + t))^k / k!."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    return _triangle_from_powers(Kind.FIRST, degenerate_log_series(n_max), n_max)


def sum_falling(p: int, n: int) -> LambdaPoly:
    """S_{n,L}(p) = (1)_{p,L} + (2)_{p,L} + ... + (n)_{p,L}; zero for n = 0."""
    if p < 0 or n < 0:
        raise ValueError("p and n must be nonnegative")
    total = LAMBDA_ZERO
    for k in range(1, n + 1):
        total = total + falling_factorial_at(k, p)
    return total
