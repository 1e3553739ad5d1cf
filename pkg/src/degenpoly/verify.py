"""Named identity checks and the suite runner.

Every check builds two (or three) objects through separate code paths and
compares them exactly, coefficient by coefficient.  Infinite sums over k are
reduced to finite sums: only k <= N can touch degrees 0..N.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .arith import LAMBDA, LAMBDA_ONE, LAMBDA_ZERO, X, XPoly, LambdaPoly, rational
from .core import (
    StirlingTriangle,
    degenerate_exp1_series,
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
from .operators import D_r_fubini_closed_form, D_r_literal, D_r_on_fubini, apply_D_r, apply_xddx_degenerate
from .polys import (
    PolyFamily,
    bell_family,
    bell_family_from_egf,
    dobinski_sides,
    fubini_family,
    fubini_family_from_ogf,
)
from .report import Failure, VerdictReport
from .series import DEFAULT_ORDER, QQ_L, TruncatedSeries, exp_series, geometric_series

SAMPLE_LAMBDAS = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2))


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Tables:
    """Shared immutable triangles and polynomial families."""

    size: int
    s2: StirlingTriangle  # recurrence-built
    s2_egf: StirlingTriangle
    s1: StirlingTriangle
    bell: PolyFamily
    fubini: PolyFamily

    @classmethod
    def build(cls, size: int) -> "Tables":
        return _tables(size)

    def perturbed(self, n: int, k: int, delta=1) -> "Tables":
        """Shift the recurrence-built S_2(n, k) by ``delta`` and rebuild what depends on it."""
        s2 = self.s2.perturbed(n, k, delta)
        return replace(self, s2=s2, bell=bell_family(self.size, s2), fubini=fubini_family(self.size, s2))


@lru_cache(maxsize=8)
def _tables(size: int) -> Tables:
    s2 = stirling2_triangle(size)
    return Tables(size, s2, stirling2_from_egf(size), stirling1_triangle(size),
                  bell_family(size, s2), fubini_family(size, s2))


@dataclass(frozen=True)
class Context:
    tables: Tables
    order: int = DEFAULT_ORDER
    lam: Fraction | None = None  # compare at L = lam instead of symbolically

    def compare(self, lhs, rhs, start: int = 0, stop: int | None = None) -> Failure | None:
        if self.lam is not None:
            lhs, rhs = _specialize(lhs, self.lam), _specialize(rhs, self.lam)
        if isinstance(lhs, TruncatedSeries):
            k = lhs.first_difference(rhs, start, stop)
            return None if k is None else Failure(k, str(lhs[k]), str(rhs[k]))
        if isinstance(lhs, XPoly):
            top = max(lhs.degree, rhs.degree) if stop is None else stop
            for k in range(start, top + 1):
                a, b = lhs.coefficient(k), rhs.coefficient(k)
                if a != b:
                    return Failure(k, str(a), str(b))
            return None
        if lhs != rhs:
            return Failure(0, str(lhs), str(rhs))
        return None

    def exp(self) -> TruncatedSeries:
        return exp_series(self.order, QQ_L)

    def series(self, p: XPoly) -> TruncatedSeries:
        return TruncatedSeries.from_xpoly(p, self.order)


def _specialize(obj, lam):
    if isinstance(obj, (TruncatedSeries, XPoly)):
        return obj.specialize(lam)
    if isinstance(obj, LambdaPoly):
        return obj.eval(lam)
    return obj


@dataclass(frozen=True)
class Check:
    identity_id: str
    fn: Callable
    grid: Callable  # SuiteConfig -> list of param dicts
    notes: tuple = ()


CHECKS: dict[str, Check] = {}


def _register(identity_id: str, grid: Callable, notes: tuple = ()):
    def deco(fn):
        CHECKS[identity_id] = Check(identity_id, fn, grid, notes)
        return fn
    return deco


def _n_grid(cfg):
    return [{"n": n} for n in range(cfg.n_max + 1)]


def _p_grid(cfg):
    return [{"p": p} for p in range(1, cfg.p_max + 1)]


def _single(cfg):
    return [{"n_max": cfg.n_max}]


def _pr_grid(cfg):
    return [{"p": p, "r": r} for p in range(1, cfg.p_max + 1) for r in range(cfg.r_max + 1)]


def _first(*failures):
    for f in failures:
        if f is not None:
            return f
    return None


# -- definitional cross-checks ----------------------------------------------

@_register("eq_5", _n_grid)
def _eq_5(ctx: Context, n: int):
    """(x)_n = sum_k S_{1,L}(n, k) (x)_{k,L} with S_1 from its generating function."""
    s1 = ctx.tables.s1
    rhs = XPoly()
    for k in range(n + 1):
        rhs = rhs + falling_factorial_degenerate(k) * s1(n, k)
    return ctx.compare(falling_factorial(n), rhs)


@_register("eq_6", _n_grid)
def _eq_6(ctx: Context, n: int):
    """(x)_{n,L} = sum_k S_{2,L}(n, k) (x)_k with S_2 from the recurrence."""
    s2 = ctx.tables.s2
    rhs = XPoly()
    for k in range(n + 1):
        rhs = rhs + falling_factorial(k) * s2(n, k)
    return ctx.compare(falling_factorial_degenerate(n), rhs)


def _compare_triangles(ctx, a: StirlingTriangle, b: StirlingTriangle, n_max: int):
    for n in range(n_max + 1):
        for k in range(n + 1):
            f = ctx.compare(a(n, k), b(n, k))
            if f is not None:
                return Failure((n, k), f.lhs, f.rhs)
    return None


@_register("eq_10_vs_33", _single)
def _eq_10_vs_33(ctx: Context, n_max: int):
    """Recurrence-built S_2 against S_2 read off (e_L(t) - 1)^k / k!."""
    return _compare_triangles(ctx, ctx.tables.s2, ctx.tables.s2_egf, n_max)


@_register("stirling_inversion", _single)
def _stirling_inversion(ctx: Context, n_max: int):
    s1, s2 = ctx.tables.s1, ctx.tables.s2
    for first, second in ((s1, s2), (s2, s1)):
        for n in range(n_max + 1):
            for m in range(n_max + 1):
                total = LAMBDA_ZERO
                for k in range(m, n + 1):
                    total = total + first(n, k) * second(k, m)
                f = ctx.compare(total, LAMBDA_ONE if n == m else LAMBDA_ZERO)
                if f is not None:
                    return Failure((n, m), f.lhs, f.rhs)
    return None


@_register("eq_7", lambda cfg: [{"N": cfg.order}])
def _eq_7(ctx: Context, N: int):
    """log_L(1 + (e_L(t) - 1)) = t."""
    inner = degenerate_exp1_series(N) - LAMBDA_ONE
    composed = degenerate_log_series(N).compose(inner)
    return ctx.compare(composed, TruncatedSeries.variable(N, QQ_L))


@_register("bell_egf", _single)
def _bell_egf(ctx: Context, n_max: int):
    """phi_{n,L} from the triangle against exp(x (e_L(t) - 1))."""
    egf = bell_family_from_egf(n_max)
    for n in range(n_max + 1):
        f = ctx.compare(ctx.tables.bell[n], egf[n])
        if f is not None:
            return Failure((n, f.index), f.lhs, f.rhs)
    return None


@_register("fubini_ogf", _single)
def _fubini_ogf(ctx: Context, n_max: int):
    """F_{n,L} from the triangle against 1 / (1 - x (e_L(t) - 1))."""
    gf = fubini_family_from_ogf(n_max)
    for n in range(n_max + 1):
        f = ctx.compare(ctx.tables.fubini[n], gf[n])
        if f is not None:
            return Failure((n, f.index), f.lhs, f.rhs)
    return None


@_register("bell_dobinski", _n_grid)
def _bell_dobinski(ctx: Context, n: int):
    """e^x phi_{n,L}(x) = sum_k (k)_{n,L} x^k / k!."""
    return ctx.compare(*dobinski_sides(ctx.tables.bell[n], n, ctx.order))


# -- Bell recurrences --------------------------------------------------------

def _bell_binomial_sum(phi: PolyFamily, n: int, top: int, upper: int) -> XPoly:
    """sum_{k=0}^{top} C(upper, k) phi_k (1)_{n-k,L}."""
    total = XPoly()
    for k in range(top + 1):
        total = total + phi[k] * (one_n_lambda(n - k) * math.comb(upper, k))
    return total


@_register("theorem_1", _n_grid, notes=("phi_{n,k} in the statement read as phi_{k,L}",
                                        "checked with both sides multiplied by x"))
def _theorem_1(ctx: Context, n: int):
    phi = ctx.tables.bell
    full = _bell_binomial_sum(phi, n, n, n)
    shifted = _bell_binomial_sum(phi, n, n - 1, n - 1) if n else XPoly()
    lhs = X * full
    rhs = phi[n + 1] + X * shifted * (LAMBDA * n)
    return ctx.compare(lhs, rhs)


@_register("theorem_2", _n_grid, notes=("checked with both sides multiplied by x",))
def _theorem_2(ctx: Context, n: int):
    phi = ctx.tables.bell
    shifted = _bell_binomial_sum(phi, n, n - 1, n - 1) if n else XPoly()
    d_phi = phi[n].derivative()
    recurrence = ctx.compare(phi[n + 1], X * d_phi + X * phi[n] - X * shifted * (LAMBDA * n))
    if recurrence is not None or n == 0:
        return recurrence
    # derivative identity: phi'_n = sum_{k<n} C(n, k) (1)_{n-k,L} phi_k
    return ctx.compare(d_phi, _bell_binomial_sum(phi, n, n - 1, n))


# -- generating functions of S_{n,L}(p) ---------------------------------------

def _sum_egf(ctx: Context, p: int, shift: int = 0) -> TruncatedSeries:
    """sum_n S_{n-shift,L}(p) x^n / n!, the sums taken by brute force."""
    return TruncatedSeries.from_function(
        lambda n: sum_falling(p, n - shift) * Fraction(1, math.factorial(n)) if n > shift else LAMBDA_ZERO,
        ctx.order, QQ_L)


@_register("proposition_3", _p_grid)
def _proposition_3(ctx: Context, p: int):
    """y' - y = e^x phi_{p,L} with y = sum_{n>=2} S_{n-1,L}(p) x^n / n!."""
    y = _sum_egf(ctx, p, shift=1)
    lhs = y.derivative() - y
    rhs = ctx.exp() * ctx.series(ctx.tables.bell[p])
    return ctx.compare(lhs, rhs)


@_register("theorem_4", _p_grid, notes=("left side read in the variable x",))
def _theorem_4(ctx: Context, p: int):
    phi = ctx.tables.bell[p]
    rhs = ctx.exp() * ctx.series(phi) + ctx.exp() * ctx.series(phi.antiderivative())
    return ctx.compare(_sum_egf(ctx, p), rhs)


@_register("theorem_5", _p_grid)
def _theorem_5(ctx: Context, p: int):
    operator = apply_xddx_degenerate(p, ctx.exp())
    ff = falling_factorial_degenerate(p)
    direct = TruncatedSeries.from_function(
        lambda n: ff.eval_x(n) * Fraction(1, math.factorial(n)), ctx.order, QQ_L)
    product = ctx.exp() * ctx.series(ctx.tables.bell[p])
    return _first(ctx.compare(operator, direct), ctx.compare(direct, product))


@_register("theorem_6", _p_grid)
def _theorem_6(ctx: Context, p: int):
    s2 = ctx.tables.s2
    poly = XPoly()
    for k in range(p + 1):
        poly = poly + (XPoly.monomial(k) + XPoly.monomial(k + 1, Fraction(1, k + 1))) * s2(p, k)
    return ctx.compare(_sum_egf(ctx, p), ctx.exp() * ctx.series(poly))


@_register("theorem_7", _p_grid, notes=("verified for p >= 1 only",
                                        "also asserts S_2(p, p+1) = 0 from the generating function"))
def _theorem_7(ctx: Context, p: int):
    phi = ctx.tables.bell
    # the vanishing used to extend the k-sum to p+1
    power = (degenerate_exp1_series(p + 1) - LAMBDA_ONE) ** (p + 1)
    vanishing = ctx.compare(power[p], LAMBDA_ZERO)
    if vanishing is not None:
        return Failure("S2(p,p+1)", vanishing.lhs, vanishing.rhs)
    integrand = (phi[p + 1] + phi[p] * (LAMBDA * p)).divide_by_x()
    rhs = ctx.exp() * ctx.series(integrand.antiderivative())
    return ctx.compare(_sum_egf(ctx, p), rhs)


@_register("eq_33", _single, notes=("checked on the generating-function triangle",))
def _eq_33(ctx: Context, n_max: int):
    s2 = ctx.tables.s2_egf
    for n in range(n_max):
        for k in range(n + 2):
            f = ctx.compare(s2(n + 1, k), s2(n, k - 1) + LambdaPoly((k, -n)) * s2(n, k))
            if f is not None:
                return Failure((n + 1, k), f.lhs, f.rhs)
    return None


def _x_over_one_minus_x(ctx: Context) -> TruncatedSeries:
    return geometric_series(ctx.order, QQ_L).shift(1)


def _fubini_at_x_over_one_minus_x(ctx: Context, poly: XPoly) -> TruncatedSeries:
    return ctx.series(poly).compose(_x_over_one_minus_x(ctx))


def _theorem_8_grid(cfg):
    return [{"p": p, "statement": s} for s in (1, 2) for p in range(1, cfg.p_max + 1)]


@_register("theorem_8", _theorem_8_grid)
def _theorem_8(ctx: Context, p: int, statement: int):
    composed = _fubini_at_x_over_one_minus_x(ctx, ctx.tables.fubini[p])
    if statement == 1:
        direct = TruncatedSeries.from_function(lambda n: falling_factorial_at(n, p), ctx.order, QQ_L)
        operator = apply_xddx_degenerate(p, geometric_series(ctx.order, QQ_L))
        closed = geometric_series(ctx.order, QQ_L) * composed
        return _first(ctx.compare(operator, direct), ctx.compare(direct, closed))
    if p < 1:
        raise ConfigError("the second statement needs p >= 1")
    lhs = TruncatedSeries.from_function(lambda n: sum_falling(p, n), ctx.order, QQ_L)
    return ctx.compare(lhs, geometric_series(ctx.order, QQ_L, power=2) * composed)


def _tail_sum(ctx: Context, p: int, full: TruncatedSeries) -> TruncatedSeries:
    """sum_{k>=1} (k)_{p,L} (full - [degrees 0..k of full])."""
    total = TruncatedSeries.zero(ctx.order, QQ_L)
    for k in range(1, ctx.order + 1):
        tail = TruncatedSeries([LAMBDA_ZERO] * (k + 1) + list(full.coeffs[k + 1:]), ctx.order, QQ_L)
        total = total + tail * falling_factorial_at(k, p)
    return total


@_register("corollary_9", _p_grid)
def _corollary_9(ctx: Context, p: int):
    lhs = _tail_sum(ctx, p, geometric_series(ctx.order, QQ_L))
    composed = _fubini_at_x_over_one_minus_x(ctx, ctx.tables.fubini[p])
    rhs = (geometric_series(ctx.order, QQ_L, power=2) * composed).shift(1)
    return ctx.compare(lhs, rhs)


@_register("eq_39", lambda cfg: [{"p": p} for p in range(cfg.p_max + 1)])
def _eq_39(ctx: Context, p: int):
    """(1/(1-x)) Li_{p,L}(x) = sum_n (sum_{k<=n} c_k) x^n."""
    lhs = geometric_series(ctx.order, QQ_L) * degenerate_polylog_series(p, ctx.order)

    def c(k):
        # (-L)^{k-1} (1)_{k,1/L} = (-1)^{k-1} (L-1)(L-2)...(L-k+1)
        prod = falling_factorial(k - 1).eval_x(LambdaPoly((-1, 1)))
        return prod * (Fraction((-1) ** (k - 1), math.factorial(k - 1)) / Fraction(k) ** p)

    partial, coeffs = LAMBDA_ZERO, [LAMBDA_ZERO]
    for n in range(1, ctx.order + 1):
        partial = partial + c(n)
        coeffs.append(partial)
    return ctx.compare(lhs, TruncatedSeries(coeffs, ctx.order, QQ_L))


# -- operator identities ------------------------------------------------------

@_register("theorem_10", lambda cfg: [{"r": r, "n": n} for r in range(cfg.r_max + 1)
                                      for n in range(cfg.n_max + 1)])
def _theorem_10(ctx: Context, r: int, n: int):
    literal = D_r_on_fubini(r, n, ctx.tables.s2)
    return ctx.compare(literal, D_r_fubini_closed_form(r, n, ctx.tables.s2))


@_register("theorem_11", _pr_grid)
def _theorem_11(ctx: Context, p: int, r: int):
    g = geometric_series(ctx.order, QQ_L, power=r + 1)
    operator = apply_xddx_degenerate(p, g)
    direct = TruncatedSeries.from_function(
        lambda n: falling_factorial_at(n, p) * math.comb(n + r, n), ctx.order, QQ_L)
    closed = g * _fubini_at_x_over_one_minus_x(ctx, apply_D_r(r, ctx.tables.fubini[p]))
    return _first(ctx.compare(operator, direct), ctx.compare(direct, closed))


@_register("theorem_12", _pr_grid, notes=("right side reduced to a finite sum per coefficient",))
def _theorem_12(ctx: Context, p: int, r: int):
    composed = _fubini_at_x_over_one_minus_x(ctx, ctx.tables.fubini[p])
    inner = geometric_series(ctx.order, QQ_L, power=2) * composed
    g = geometric_series(ctx.order, QQ_L, power=r + 1)
    lhs = D_r_literal(r, inner) - apply_xddx_degenerate(p, g)
    return ctx.compare(lhs, _tail_sum(ctx, p, g))


# -- running ------------------------------------------------------------------

IDENTITY_IDS = tuple(CHECKS)


@dataclass(frozen=True)
class SuiteConfig:
    n_max: int = 10
    p_max: int = 8
    r_max: int = 4
    order: int = DEFAULT_ORDER
    selection: tuple = field(default=IDENTITY_IDS)
    lam: Fraction | None = None

    def validate(self):
        if self.n_max < 0:
            raise ConfigError("n_max must be nonnegative")
        if self.p_max < 1:
            raise ConfigError("p_max must be at least 1")
        if self.r_max < 0:
            raise ConfigError("r_max must be nonnegative")
        if self.order < max(2, self.r_max + 2):
            raise ConfigError("order N must be at least max(2, r_max + 2)")
        unknown = [s for s in self.selection if s not in CHECKS]
        if unknown:
            raise ConfigError(f"unknown identity {unknown[0]!r}; valid: {', '.join(IDENTITY_IDS)}")

    @property
    def table_size(self) -> int:
        return max(self.n_max, self.p_max) + 1


def run_check(identity_id: str, ctx: Context, **params) -> VerdictReport:
    check = CHECKS[identity_id]
    start = time.perf_counter()
    failure = check.fn(ctx, **params)
    elapsed = (time.perf_counter() - start) * 1000
    shown = dict(params)
    if ctx.lam is not None:
        shown["lambda"] = str(ctx.lam)
    return VerdictReport(identity_id, shown, failure is None, failure, elapsed, check.notes)


def run_suite(config: SuiteConfig = SuiteConfig(), tables: Tables | None = None) -> list[VerdictReport]:
    config.validate()
    if tables is None:
        tables = Tables.build(config.table_size)
    elif tables.size < config.table_size:
        raise ConfigError(f"tables of size {tables.size} too small for this config")
    ctx = Context(tables, config.order, config.lam)
    reports = []
    for identity_id in config.selection:
        for params in CHECKS[identity_id].grid(config):
            reports.append(run_check(identity_id, ctx, **params))
    return reports


def reports_to_json(reports, with_elapsed: bool = True) -> str:
    return json.dumps({
        "passed": all(r.passed for r in reports),
        "reports": [r.to_dict(with_elapsed) for r in reports],
    }, indent=1)


def _context(n: int, order: int, lam, tables: Tables | None) -> Context:
    if tables is None:
        tables = Tables.build(n + 1)
    return Context(tables, order, None if lam is None else rational(lam))


def check_theorem_1(n, *, tables=None, lam=None):
    return run_check("theorem_1", _context(n + 1, DEFAULT_ORDER, lam, tables), n=n)


def check_theorem_2(n, *, tables=None, lam=None):
    return run_check("theorem_2", _context(n + 1, DEFAULT_ORDER, lam, tables), n=n)


def check_proposition_3(p, N=DEFAULT_ORDER, *, tables=None, lam=None):
    return run_check("proposition_3", _context(p, N, lam, tables), p=p)


def check_theorem_4(p, N=DEFAULT_ORDER, *, tables=None, lam=None):
    return run_check("theorem_4", _context(p, N, lam, tables), p=p)


def check_theorem_5(p, N=DEFAULT_ORDER, *, tables=None, lam=None):
    return run_check("theorem_5", _context(p, N, lam, tables), p=p)


def check_theorem_6(p, N=DEFAULT_ORDER, *, tables=None, lam=None):
    return run_check("theorem_6", _context(p, N, lam, tables), p=p)


def check_theorem_7(p, N=DEFAULT_ORDER, *, tables=None, lam=None):
    if p < 1:
        raise ConfigError("theorem_7 needs p >= 1")
    return run_check("theorem_7", _context(p + 1, N, lam, tables), p=p)


def check_eq_33(n_max, *, tables=None, lam=None):
    if n_max < 1:
        raise ConfigError("n_max must be at least 1")
    return run_check("eq_33", _context(n_max, DEFAULT_ORDER, lam, tables), n_max=n_max)


def check_theorem_8(p, N=DEFAULT_ORDER, statement=1, *, tables=None, lam=None):
    return run_check("theorem_8", _context(p, N, lam, tables), p=p, statement=statement)


def check_corollary_9(p, N=DEFAULT_ORDER, *, tables=None, lam=None):
    return run_check("corollary_9", _context(p, N, lam, tables), p=p)


def check_eq_39(p, N=DEFAULT_ORDER, *, lam=None):
    return run_check("eq_39", _context(0, N, lam, None), p=p)


def check_theorem_10(r, n, *, tables=None, lam=None):
    return run_check("theorem_10", _context(n, DEFAULT_ORDER, lam, tables), r=r, n=n)


def check_theorem_11(p, r, N=DEFAULT_ORDER, *, tables=None, lam=None):
    return run_check("theorem_11", _context(p, N, lam, tables), p=p, r=r)


def check_theorem_12(p, r, N=DEFAULT_ORDER, *, tables=None, lam=None):
    if N < r + 2:
        raise ConfigError("N must be at least r + 2")
    return run_check("theorem_12", _context(p, N, lam, tables), p=p, r=r)
