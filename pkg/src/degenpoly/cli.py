"""Command-line front end.

Exit codes: 0 success, 1 identity failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .arith import LambdaPoly, rational
from .core import (
    degenerate_exp1_series,
    degenerate_exp_series,
    degenerate_log_series,
    degenerate_polylog_series,
    stirling1_triangle,
    stirling2_triangle,
    sum_falling,
)
from .polys import bell_poly, fubini_poly
from .series import DEFAULT_ORDER
from .verify import IDENTITY_IDS, SAMPLE_LAMBDAS, ConfigError, SuiteConfig, reports_to_json, run_suite


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _lambda(text: str):
    if text in ("sym", "symbolic", "L"):
        return None
    try:
        return rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad --lambda value {text!r}: {exc}")


def _rat(text: str):
    try:
        return rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _coeff_text(c) -> str:
    if isinstance(c, LambdaPoly):
        return c.render(compact=True)
    return str(c)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_triangle(args) -> int:
    build = stirling1_triangle if args.kind == "first" else stirling2_triangle
    tri = build(args.n_max)
    if args.format == "json":
        text = tri.to_json(args.lam)
    elif args.format == "csv":
        text = tri.to_csv(args.lam).rstrip("\n")
    else:
        text = tri.to_text(args.lam)
    _emit(args, text)
    return 0


def cmd_poly(args) -> int:
    poly = (bell_poly if args.family == "bell" else fubini_poly)(args.n)
    if args.lam is not None:
        poly = poly.specialize(args.lam)
    if args.at_x is not None:
        value = poly.eval_x(args.at_x)
        value = value.eval(0) if value.is_constant() else value
        if args.format == "json":
            text = json.dumps({"family": args.family, "n": args.n, "x": str(args.at_x), "value": str(value)})
        elif args.format == "csv":
            text = _csv(["family", "n", "x", "value"], [[args.family, args.n, args.at_x, str(value)]])
        else:
            text = str(value)
    elif args.format == "json":
        text = json.dumps({"family": args.family, "n": args.n,
                           "coeffs": [c.render(compact=True) for c in poly.coeffs]})
    elif args.format == "csv":
        text = _csv(["k", "coeff"], [[k, c.render(compact=True)] for k, c in enumerate(poly.coeffs)])
    else:
        text = poly.render()
    _emit(args, text)
    return 0


def cmd_sum(args) -> int:
    value = sum_falling(args.p, args.n)
    if args.lam is not None:
        value = value.eval(args.lam)
    if args.format == "json":
        text = json.dumps({"p": args.p, "n": args.n, "value": str(value)})
    elif args.format == "csv":
        text = _csv(["p", "n", "value"], [[args.p, args.n, str(value)]])
    else:
        text = str(value)
    _emit(args, text)
    return 0


_SERIES = {
    "exp": lambda args: degenerate_exp_series(args.order),
    "exp1": lambda args: degenerate_exp1_series(args.order),
    "log": lambda args: degenerate_log_series(args.order),
    "polylog": lambda args: degenerate_polylog_series(args.k, args.order),
}


def cmd_series(args) -> int:
    series = _SERIES[args.name](args)
    if args.lam is not None:
        series = series.specialize(args.lam)
    coeffs = [_coeff_text(c) for c in series.coeffs]
    if args.format == "json":
        text = json.dumps({"name": args.name, "order": series.order, "coeffs": coeffs})
    elif args.format == "csv":
        text = _csv(["n", "coeff"], list(enumerate(coeffs)))
    else:
        text = series.render()
    _emit(args, text)
    return 0


def cmd_verify(args, parser) -> int:
    selection = tuple(args.identities) if args.identities and not args.all else IDENTITY_IDS
    lambdas = [args.lam]
    if args.sample_lambdas:
        lambdas += [v for v in SAMPLE_LAMBDAS if v != args.lam]
    reports = []
    try:
        for lam in lambdas:
            config = SuiteConfig(args.n_max, args.p_max, args.r_max, args.order, selection, lam)
            reports.extend(run_suite(config))
    except ConfigError as exc:
        parser.error(str(exc))
    timing = not args.no_timing
    if args.format == "json":
        text = reports_to_json(reports, with_elapsed=timing)
    elif args.format == "csv":
        rows = []
        for r in reports:
            f = r.first_failure
            row = [r.identity_id, json.dumps(r.params, sort_keys=True), r.passed,
                   json.dumps(f.to_dict()["index"]) if f else "", f.lhs if f else "", f.rhs if f else ""]
            if timing:
                row.append(round(r.elapsed_ms, 3))
            rows.append(row)
        header = ["identity_id", "params", "passed", "index", "lhs", "rhs"] + (["elapsed_ms"] if timing else [])
        text = _csv(header, rows)
    else:
        lines = [r.summary() for r in reports]
        passed = sum(r.passed for r in reports)
        families = len({r.identity_id for r in reports})
        lines.append(f"{passed}/{len(reports)} checks passed across {families} identities")
        text = "\n".join(lines)
    _emit(args, text)
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degenpoly",
        description="Degenerate Stirling, Bell and Fubini tables and identity checks (L denotes lambda).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", type=_lambda, default=None, metavar="p/q|sym",
                        help="rational value for lambda; default keeps it symbolic")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("triangle", parents=[common], help="degenerate Stirling triangle rows")
    p.add_argument("kind", choices=("first", "second"))
    p.add_argument("n_max", type=_nonneg)

    p = sub.add_parser("poly", parents=[common], help="degenerate Bell or Fubini polynomial")
    p.add_argument("family", choices=("bell", "fubini"))
    p.add_argument("n", type=_nonneg)
    p.add_argument("--at-x", dest="at_x", type=_rat, default=None, metavar="p/q")

    p = sub.add_parser("sum", parents=[common], help="S_{n,L}(p) = (1)_{p,L} + ... + (n)_{p,L}")
    p.add_argument("p", type=_positive)
    p.add_argument("n", type=_positive)

    p = sub.add_parser("series", parents=[common], help="degenerate exp/log/polylog series")
    p.add_argument("name", choices=tuple(_SERIES))
    p.add_argument("--k", type=int, default=1, help="polylog index")
    p.add_argument("--order", type=_nonneg, default=DEFAULT_ORDER)

    p = sub.add_parser("verify", parents=[common], help="run the identity suite")
    p.add_argument("identities", nargs="*", metavar="IDENTITY",
                   help=f"identities to check (default all): {', '.join(IDENTITY_IDS)}")
    p.add_argument("--all", action="store_true", help="check every identity")
    p.add_argument("--n-max", type=_nonneg, default=10)
    p.add_argument("--p-max", type=_positive, default=8)
    p.add_argument("--r-max", type=_nonneg, default=4)
    p.add_argument("--order", type=_nonneg, default=DEFAULT_ORDER)
    p.add_argument("--sample-lambdas", action="store_true",
                   help="also re-run at lambda in {0, 1, -1, 1/2}")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed times")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        bad = [name for name in args.identities if name not in IDENTITY_IDS]
        if bad:
            parser.error(f"unknown identity {bad[0]!r}; valid names: {', '.join(IDENTITY_IDS)}")
        return cmd_verify(args, parser)
    handler = {"triangle": cmd_triangle, "poly": cmd_poly, "sum": cmd_sum, "series": cmd_series}
    return handler[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
