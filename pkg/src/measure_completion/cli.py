"""Command-line entry point: ``measure-completion --scenario svc --json -``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidScenario, MalformedInterval, ParseError
from .harness import SCENARIOS, Scenario, run
from .measure_algebra import parse_setexpr
from .report import format_rational


def _rational(text: str) -> Fraction:
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="measure-completion",
        description="Run completion / extension verification scenarios with exact arithmetic.",
    )
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--scenario", choices=SCENARIOS)
    target.add_argument("--set", dest="setexpr", metavar="EXPR",
                        help='normalize an interval-set literal, e.g. "[0,1/2) U [2/3,1)"')
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--atoms", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=_rational, default=Fraction(1, 10**6), metavar="P/Q")
    p.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    p.add_argument("--parallel", action="store_true", help="run independent checks concurrently")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _show_set(text: str) -> int:
    try:
        s = parse_setexpr(text)
    except (ParseError, MalformedInterval) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(s.to_literal())
    print(f"measure {format_rational(s.measure())}")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.setexpr is not None:
        return _show_set(args.setexpr)
    try:
        scenario = Scenario(args.scenario, args.depth, args.atoms, args.seed, args.eps)
    except InvalidScenario as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = run(scenario, parallel=args.parallel)
    if args.json is not None:
        text = json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n"
        if args.json == "-":
            sys.stdout.write(text)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
    if args.json != "-":
        for c in report.checks:
            values = ", ".join(format_rational(v) for v in c.values)
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<30} [{values}] ± {format_rational(c.radius)}")
        print(f"{'PASS' if report.passed else 'FAIL'}  {scenario.name} ({report.ms:.0f} ms)")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
