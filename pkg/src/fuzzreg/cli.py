"""Command line: ``analyze``, ``demo-paper`` and ``lp-solve``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import lp, pipeline, reference
from .io import InputError, load_config, load_survey
from .linguistic import LinguisticError
from .lpfile import format_solution, load_lp
from .regression import InfeasibleFit

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_INTERNAL = 4


def _write_report(an, out, timestamp):
    text = pipeline.dumps_report(pipeline.to_report(an, timestamp=timestamp))
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_analyze(args) -> int:
    survey = load_survey(args.survey)
    config = load_config(args.config) if args.config else pipeline.bundled_config()
    an = pipeline.analyze(survey, config)
    _write_report(an, args.out, args.timestamp)
    if args.plot:
        from .plot import plot_intervals
        plot_intervals(an, args.plot)
    return EXIT_OK


def cmd_demo(args) -> int:
    an = pipeline.analyze(pipeline.bundled_survey(), pipeline.bundled_config())
    report = pipeline.to_report(an)
    if args.out:
        _write_report(an, args.out, False)
    if args.plot:
        from .plot import plot_intervals
        plot_intervals(an, args.plot)
    checks = reference.compare(report)
    sys.stdout.write(reference.format_checks(checks, verbose=args.verbose))
    failed = any(reference.status_of(c) == reference.FAIL for c in checks)
    return 1 if failed else EXIT_OK


def cmd_lp_solve(args) -> int:
    prog = load_lp(args.file)
    sol = lp.solve(prog)
    sys.stdout.write(format_solution(prog, sol))
    return EXIT_OK if sol.optimal else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fuzzreg",
        description="Fuzzy random regression on linguistic survey data.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run the full pipeline on a survey file")
    a.add_argument("survey")
    a.add_argument("--config", help="run configuration (defaults to the bundled case-study settings)")
    a.add_argument("--out", default="-", help="report path, '-' for stdout")
    a.add_argument("--plot", help="write an SVG interval chart here")
    a.add_argument("--timestamp", action="store_true", help="include a generation timestamp")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("demo-paper", help="run the bundled case study and compare with reference values")
    d.add_argument("--verbose", action="store_true", help="list passing checks too")
    d.add_argument("--out", help="also write the report here")
    d.add_argument("--plot", help="also write the SVG chart here")
    d.set_defaults(func=cmd_demo)

    s = sub.add_parser("lp-solve", help="solve a linear program from a text file")
    s.add_argument("file")
    s.set_defaults(func=cmd_lp_solve)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleFit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (InputError, LinguisticError, lp.LPError, OSError, ValueError) as exc:
        # remaining ValueErrors come from invalid input data (bad probabilities, shapes)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
