"""Command-line harness.

    circq run <config> [--suite NAME]... [--out report.json] [--tol-scale FACTOR]
    circq validate <config>
    circq expr-check "<expression>" --at x1,x2,x3,x4

Exit codes: 0 all checks pass, 1 a check failed, 2 bad config or input,
3 a math error while running a suite.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .config import SUITES, ConfigError, load_config
from .expr import DomainError, ParseError, eval_jet2, parse
from .report import dumps
from .suites import SuiteError, run_suites

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_MATH = 0, 1, 2, 3


def _run(cfg, suites, out, tol_scale) -> int:
    try:
        report = run_suites(cfg, suites, tol_scale)
    except SuiteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    for entry in report.entries:
        print(entry.line())
    failed = sum(not e.passed for e in report.entries if not e.informational)
    total = sum(not e.informational for e in report.entries)
    print(f"overall: {'PASS' if report.overall_pass else 'FAIL'} "
          f"({total - failed}/{total} checks passed)")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(dumps(report.as_dict()))
    return EXIT_OK if report.overall_pass else EXIT_FAIL


def _point(text: str) -> np.ndarray:
    try:
        values = [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from None
    if len(values) != 4:
        raise argparse.ArgumentTypeError("expected four comma-separated coordinates")
    return np.array(values)


def _expr_check(text: str, at: np.ndarray) -> int:
    try:
        e = parse(text)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        jet = eval_jet2(e, at)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH

    def fmt(v):
        return " ".join(format(float(t), ".17g") for t in v)

    print(f"value: {jet.value:.17g}")
    print(f"grad: {fmt(jet.grad)}")
    print("hess:")
    for row in jet.hess:
        print(f"  {fmt(row)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circq",
        description="Curvature checks for the circulant metric and structure q.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run verification suites from a config file")
    run.add_argument("config")
    run.add_argument("--suite", action="append", choices=SUITES, dest="suites",
                     help="restrict to this suite (repeatable)")
    run.add_argument("--out", default="report.json",
                     help="structured report path (default: report.json)")
    run.add_argument("--tol-scale", type=float, default=1.0,
                     help="multiply every tolerance by this factor")

    val = sub.add_parser("validate", help="check the config and run the validate suite")
    val.add_argument("config")

    ec = sub.add_parser("expr-check", help="parse an expression and print its 2-jet")
    ec.add_argument("expression")
    ec.add_argument("--at", type=_point, default=np.zeros(4),
                    help="point as x1,x2,x3,x4 (default: origin)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    if args.command == "expr-check":
        return _expr_check(args.expression, args.at)
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.command == "validate":
        return _run(cfg, ("validate",), None, 1.0)
    if args.tol_scale <= 0:
        print("error: --tol-scale must be positive", file=sys.stderr)
        return EXIT_CONFIG
    return _run(cfg, args.suites, args.out, args.tol_scale)


if __name__ == "__main__":
    sys.exit(main())
