"""Exact computation and identity checking for degenerate Bell and Fubini polynomials."""

from .arith import LAMBDA, X, LambdaPoly, NotDivisibleByX, Rational, XPoly, lpoly_eval, rational
from .core import (
    StirlingTriangle,
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
from .operators import D_r_on_fubini, apply_D_r, apply_xddx_degenerate, xddx_on_exp
from .polys import (
    bell_dobinski_check,
    bell_family,
    bell_family_from_egf,
    bell_poly,
    fubini_family,
    fubini_family_from_ogf,
    fubini_poly,
)
from .report import Failure, VerdictReport
from .series import QQ, QQ_L, QQ_L_X, SeriesError, TruncatedSeries
from .verify import IDENTITY_IDS, SuiteConfig, Tables, run_suite

__version__ = "0.1.0"
