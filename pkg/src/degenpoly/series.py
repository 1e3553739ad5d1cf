"""Truncated formal power series over an exact coefficient ring."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .arith import (
    LAMBDA_ONE,
    LAMBDA_ZERO,
    XPOLY_ONE,
    XPOLY_ZERO,
    LambdaPoly,
    XPoly,
    rational,
)

DEFAULT_ORDER = 16


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: elements must support +, -, *, == and scaling by Fractions."""

    name: str
    zero: Any
    one: Any
    coerce: Callable[[Any], Any]

    def render(self, c) -> str:
        if isinstance(c, (LambdaPoly, XPoly)) and _is_compound(c):
            body = c.render(compact=True) if isinstance(c, LambdaPoly) else c.render()
            return f"({body})"
        return c.render(compact=True) if isinstance(c, LambdaPoly) else str(c)


def _is_compound(c) -> bool:
    if isinstance(c, LambdaPoly):
        return sum(1 for a in c.coeffs if a) > 1
    nonzero = [a for a in c.coeffs if a]
    return len(nonzero) > 1 or (len(nonzero) == 1 and _is_compound(nonzero[0]))


QQ = Ring("QQ", Fraction(0), Fraction(1), rational)
QQ_L = Ring("QQ[L]", LAMBDA_ZERO, LAMBDA_ONE, LambdaPoly.coerce)
QQ_L_X = Ring("QQ[L][x]", XPOLY_ZERO, XPOLY_ONE, XPoly.coerce)


class TruncatedSeries:
    """Power series known through degree ``order``.

    ``valid`` is the highest degree whose coefficient is known exactly; it
    drops below ``order`` after differentiation, which cannot see the
    coefficient beyond the truncation.
    """

    __slots__ = ("coeffs", "order", "ring", "valid")

    def __init__(self, coeffs, order: int | None = None, ring: Ring = QQ, valid: int | None = None):
        cs = [ring.coerce(c) for c in coeffs]
        if order is None:
            order = max(len(cs) - 1, 0)
        if order < 0:
            raise SeriesError("truncation order must be nonnegative")
        cs = cs[: order + 1] + [ring.zero] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order
        self.ring = ring
        self.valid = order if valid is None else min(valid, order)

    @classmethod
    def _raw(cls, coeffs, order, ring, valid):
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        obj.order = order
        obj.ring = ring
        obj.valid = valid
        return obj

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER, ring: Ring = QQ):
        return cls._raw([ring.zero] * (order + 1), order, ring, order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER, ring: Ring = QQ):
        return cls.constant(ring.one, order, ring)

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER, ring: Ring = QQ):
        return cls([c], order, ring)

    @classmethod
    def variable(cls, order: int = DEFAULT_ORDER, ring: Ring = QQ):
        """The series t."""
        return cls.monomial(1, order, ring)

    @classmethod
    def monomial(cls, k: int, order: int = DEFAULT_ORDER, ring: Ring = QQ, c=None):
        coeffs = [ring.zero] * (order + 1)
        if k <= order:
            coeffs[k] = ring.one if c is None else ring.coerce(c)
        return cls._raw(coeffs, order, ring, order)

    @classmethod
    def from_function(cls, fn: Callable[[int], Any], order: int = DEFAULT_ORDER, ring: Ring = QQ):
        return cls([fn(n) for n in range(order + 1)], order, ring)

    @classmethod
    def from_xpoly(cls, p: XPoly, order: int = DEFAULT_ORDER):
        """View a polynomial in x as a series over QQ[L] (degrees above ``order`` dropped)."""
        return cls(list(p.coeffs), order, QQ_L)

    # -- structure --------------------------------------------------------

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries")
        if other.order != self.order:
            raise SeriesError(
                f"truncation order mismatch: {self.order} vs {other.order}")

    def coefficient(self, k: int):
        if k < 0 or k > self.order:
            raise SeriesError(f"degree {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    __getitem__ = coefficient

    def __len__(self):
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def first_difference(self, other: "TruncatedSeries", start: int = 0, stop: int | None = None):
        """First degree in ``start..stop`` where the two series differ, or None."""
        self._check(other)
        if stop is None:
            stop = min(self.valid, other.valid)
        for k in range(start, stop + 1):
            if self.coeffs[k] != other.coeffs[k]:
                return k
        return None

    def with_order(self, order: int) -> "TruncatedSeries":
        """Re-truncate.  Raising the order pads with zeros; ``valid`` is not raised."""
        if order <= self.order:
            return TruncatedSeries._raw(self.coeffs[: order + 1], order, self.ring, min(self.valid, order))
        pad = [self.ring.zero] * (order - self.order)
        return TruncatedSeries._raw(self.coeffs + tuple(pad), order, self.ring, self.valid)

    def map(self, fn: Callable[[Any], Any], ring: Ring | None = None) -> "TruncatedSeries":
        ring = ring or self.ring
        return TruncatedSeries([fn(c) for c in self.coeffs], self.order, ring, self.valid)

    def map_indexed(self, fn: Callable[[int, Any], Any], ring: Ring | None = None) -> "TruncatedSeries":
        ring = ring or self.ring
        return TruncatedSeries([fn(n, c) for n, c in enumerate(self.coeffs)], self.order, ring, self.valid)

    def specialize(self, lam) -> "TruncatedSeries":
        """Substitute L = lam in every coefficient."""
        if self.ring is QQ_L:
            return self.map(lambda c: c.eval(lam), QQ)
        if self.ring is QQ_L_X:
            return self.map(lambda c: c.specialize(lam))
        return self

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self + TruncatedSeries.constant(other, self.order, self.ring)
        self._check(other)
        return TruncatedSeries._raw(
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            self.order, self.ring, min(self.valid, other.valid))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw([-a for a in self.coeffs], self.order, self.ring, self.valid)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self - TruncatedSeries.constant(other, self.order, self.ring)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries._raw(
                [a * other for a in self.coeffs], self.order, self.ring, self.valid)
        self._check(other)
        a, b, zero = self.coeffs, other.coeffs, self.ring.zero
        n = self.order
        out = []
        for k in range(n + 1):
            acc = zero
            for i in range(k + 1):
                ai = a[i]
                if ai:
                    bj = b[k - i]
                    if bj:
                        acc = acc + ai * bj
            out.append(acc)
        return TruncatedSeries._raw(out, n, self.ring, min(self.valid, other.valid))

    def __rmul__(self, other):
        return TruncatedSeries._raw([other * a for a in self.coeffs], self.order, self.ring, self.valid)

    def __truediv__(self, k):
        if isinstance(k, TruncatedSeries):
            return self * k.inverse()
        k = rational(k)
        if k == 0:
            raise ZeroDivisionError("division by zero")
        return self * (1 / k)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncatedSeries.one(self.order, self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k, truncating at the same order."""
        n = self.order
        coeffs = [self.ring.zero] * min(k, n + 1) + list(self.coeffs[: max(n + 1 - k, 0)])
        return TruncatedSeries._raw(coeffs, n, self.ring, min(self.valid + k, n))

    # -- calculus ---------------------------------------------------------

    def derivative(self) -> "TruncatedSeries":
        n = self.order
        coeffs = [self.coeffs[k + 1] * (k + 1) for k in range(n)] + [self.ring.zero]
        return TruncatedSeries._raw(coeffs, n, self.ring, self.valid - 1)

    def integral(self) -> "TruncatedSeries":
        """Antiderivative with zero constant term.

        The input's top coefficient would land at degree order+1 and is
        dropped; ``dropped_top`` reports whether it was nonzero.
        """
        n = self.order
        coeffs = [self.ring.zero] + [self.coeffs[k] * Fraction(1, k + 1) for k in range(n)]
        return TruncatedSeries._raw(coeffs, n, self.ring, min(self.valid + 1, n))

    def dropped_top(self) -> bool:
        """True when :meth:`integral` would discard a nonzero coefficient."""
        return bool(self.coeffs[-1])

    # -- transcendental operations ----------------------------------------

    def exp(self) -> "TruncatedSeries":
        """exp(f) for f with zero constant term, via n g_n = sum k f_k g_{n-k}."""
        if self.coeffs[0] != self.ring.zero:
            raise SeriesError("exp requires zero constant term")
        n, f, zero = self.order, self.coeffs, self.ring.zero
        g = [self.ring.one]
        for m in range(1, n + 1):
            acc = zero
            for k in range(1, m + 1):
                if f[k]:
                    acc = acc + f[k] * g[m - k] * k
            g.append(acc * Fraction(1, m))
        return TruncatedSeries._raw(g, n, self.ring, self.valid)

    def log1p(self) -> "TruncatedSeries":
        """log(1 + f) for f with zero constant term."""
        if self.coeffs[0] != self.ring.zero:
            raise SeriesError("log1p requires zero constant term")
        return (self.derivative() * (self + self.ring.one).inverse()).integral()

    def with_valid(self, valid: int) -> "TruncatedSeries":
        return TruncatedSeries._raw(self.coeffs, self.order, self.ring, min(valid, self.order))

    def inverse(self) -> "TruncatedSeries":
        """1/f for f with constant term exactly one."""
        if self.coeffs[0] != self.ring.one:
            raise SeriesError("geometric inverse requires constant term one")
        n, f, zero = self.order, self.coeffs, self.ring.zero
        g = [self.ring.one]
        for m in range(1, n + 1):
            acc = zero
            for k in range(1, m + 1):
                if f[k]:
                    acc = acc + f[k] * g[m - k]
            g.append(-acc)
        return TruncatedSeries._raw(g, n, self.ring, self.valid)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """f(g(t)) by Horner's rule; g must have zero constant term."""
        self._check(inner)
        if inner.coeffs[0] != inner.ring.zero:
            raise SeriesError("composition requires nilpotent inner series")
        top = max((k for k, c in enumerate(self.coeffs) if c), default=0)
        acc = TruncatedSeries.zero(self.order, inner.ring)
        for c in reversed(self.coeffs[: top + 1]):
            acc = acc * inner
            if c:
                acc = acc + inner.ring.coerce(c)
        return acc.with_valid(min(self.valid, inner.valid))

    # -- EGF weights ------------------------------------------------------

    def scale_egf(self) -> "TruncatedSeries":
        """{a_n} -> {a_n / n!}."""
        return self.map_indexed(lambda n, c: c * Fraction(1, math.factorial(n)))

    def unscale_egf(self) -> "TruncatedSeries":
        """{a_n} -> {n! a_n}."""
        return self.map_indexed(lambda n, c: c * math.factorial(n))

    # -- rendering --------------------------------------------------------

    def render(self, var: str = "t") -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            body = self.ring.render(c)
            negative = body.startswith("-") and not body.startswith("(")
            if negative:
                body = body[1:]
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono:
                text = mono if body == "1" else f"{body}*{mono}"
            else:
                text = body
            parts.append((negative, text))
        out = ""
        for i, (negative, text) in enumerate(parts):
            if i == 0:
                out = ("-" if negative else "") + text
            else:
                out += (" - " if negative else " + ") + text
        tail = f"O({var}^{self.order + 1})"
        return f"{out} + {tail}" if out else tail

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"TruncatedSeries({self.render()!r}, ring={self.ring.name})"


def series_exp(f: TruncatedSeries) -> TruncatedSeries:
    return f.exp()


def series_log1p(f: TruncatedSeries) -> TruncatedSeries:
    return f.log1p()


def series_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f.compose(g)


def series_geometric_inverse(f: TruncatedSeries) -> TruncatedSeries:
    return f.inverse()


def series_integrate(f: TruncatedSeries) -> TruncatedSeries:
    return f.integral()


def series_differentiate(f: TruncatedSeries) -> TruncatedSeries:
    return f.derivative()


def series_coefficient(f: TruncatedSeries, k: int):
    return f.coefficient(k)


def series_scale_egf(f: TruncatedSeries) -> TruncatedSeries:
    return f.scale_egf()


def series_unscale_egf(f: TruncatedSeries) -> TruncatedSeries:
    return f.unscale_egf()


def exp_series(order: int = DEFAULT_ORDER, ring: Ring = QQ) -> TruncatedSeries:
    """e^t."""
    return TruncatedSeries.from_function(lambda n: Fraction(1, math.factorial(n)), order, ring)


def geometric_series(order: int = DEFAULT_ORDER, ring: Ring = QQ, power: int = 1) -> TruncatedSeries:
    """(1 - t)^(-power)."""
    one_minus_t = TruncatedSeries([ring.one, -ring.one], order, ring)
    return (one_minus_t ** power).inverse()
