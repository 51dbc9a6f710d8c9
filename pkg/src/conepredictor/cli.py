"""Command-line interface.

Exit codes: 0 on success, 1 when the solver or a check fails, 2 on usage
and input errors.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .diagnostics import assess, check_linear_rate, fit_tail_exponent, identity_suite
from .diagnostics.rates import predictor_growth_violations, trial_budget
from .diagnostics.report import Report, at_least, at_most, info
from .errors import ConeError, InfeasibleStart, ParameterOutOfRange, ProblemParseError, UnknownExample, WindowTooShort
from .generators import EXAMPLES, generate_example
from .io import read_problem, read_trace, write_problem, write_trace
from .pathfollow import SolverConfig, solve

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _load_problem(path):
    try:
        return read_problem(path)
    except InfeasibleStart:
        raise
    except ProblemParseError as exc:
        raise _UsageError(f"{path}: {exc}") from None
    except OSError as exc:
        raise _UsageError(str(exc)) from None


def _load_trace(path, nu=None):
    try:
        return read_trace(path, nu)
    except ProblemParseError as exc:
        raise _UsageError(f"{path}: {exc}") from None
    except OSError as exc:
        raise _UsageError(str(exc)) from None


def _summary(trace) -> Report:
    rep = Report()
    final = trace.final
    rep.add(info("status", "converged" if trace.converged else "stopped"))
    rep.add(info("iterations", len(trace.records) - 1))
    rep.add(info("nu", float(trace.nu)))
    rep.add(info("mu", float(final.mu)))
    rep.add(info("dual_obj", float(final.dual_obj)))
    rep.add(info("gap_bound", float(final.gap_bound)))
    if len(trace.records) >= 2:
        flags = check_linear_rate(trace, trace.nu)
        rep.add(at_most("linear_rate_violations", int(np.count_nonzero(~flags)), 0))
        used, budget = trial_budget(trace)
        rep.add(info("predictor_trials", used))
        rep.add(info("trial_budget", float(budget)))
    return rep


def cmd_solve(args) -> int:
    problem = _load_problem(args.file)
    try:
        config = SolverConfig(epsilon=args.eps, max_outer_iterations=args.max_iter)
    except ParameterOutOfRange as exc:
        raise _UsageError(str(exc)) from None
    try:
        trace = solve(problem, config)
    except ConeError as exc:
        partial = getattr(exc, "trace", None)
        if args.trace and partial is not None and partial.records:
            write_trace(partial, args.trace)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        if partial is not None and partial.records:
            sys.stdout.write(_summary(partial).text())
        return EXIT_FAIL
    if args.trace:
        write_trace(trace, args.trace)
    sys.stdout.write(_summary(trace).text())
    return EXIT_OK


def cmd_check_barrier(args) -> int:
    try:
        rep = identity_suite(args.cone, samples=args.samples, seed=args.seed)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    sys.stdout.write(rep.text())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_estimate(args) -> int:
    problem = _load_problem(args.file)
    trace = _load_trace(args.trace, problem.nu)
    result = assess(problem, trace)
    for note in result.notes:
        print(f"# {note}")
    sys.stdout.write(result.report.text())
    return EXIT_OK if result.report.passed else EXIT_FAIL


def cmd_rates(args) -> int:
    trace = _load_trace(args.trace, args.nu)
    rep = Report()
    flags = check_linear_rate(trace, trace.nu)
    rep.add(info("nu", float(trace.nu)))
    rep.add(at_most("linear_rate_violations", int(np.count_nonzero(~flags)), 0))
    try:
        fit = fit_tail_exponent(trace, args.window, trace.nu)
    except WindowTooShort as exc:
        print(f"# tail fit skipped: {exc}")
    else:
        rep.add(info("tail_points", fit.points))
        rep.add(info("tail_exponent", fit.tail_exponent))
        rep.add(info("tail_constant", fit.tail_constant))
    if any(r.trials for r in trace.records):
        rep.add(at_most("predictor_growth_violations", len(predictor_growth_violations(trace)), 0))
    sys.stdout.write(rep.text())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_gen(args) -> int:
    try:
        problem, _ = generate_example(args.example, args.params, args.seed)
    except (UnknownExample, ParameterOutOfRange, TypeError, ValueError) as exc:
        raise _UsageError(str(exc)) from None
    write_problem(problem, args.output)
    return EXIT_OK


def cmd_version(args) -> int:
    print(f"conepredictor {__version__}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conepredictor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the predictor-corrector method on a problem file")
    p.add_argument("file")
    p.add_argument("--eps", type=float, default=1e-8, help="target accuracy (default 1e-8)")
    p.add_argument("--max-iter", type=int, default=200, help="outer iteration limit")
    p.add_argument("--trace", help="write the iteration trace CSV here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check-barrier", help="run barrier identity and curvature checks")
    p.add_argument("cone", help="cone descriptor such as psd3, 'orthant 4' or hankel_poly2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_check_barrier)

    p = sub.add_parser("estimate", help="estimate assumption constants along a trace")
    p.add_argument("file")
    p.add_argument("--trace", required=True)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("rates", help="check the rate laws on a trace")
    p.add_argument("--trace", required=True)
    p.add_argument("--window", type=int, help="number of trailing penalty values to fit")
    p.add_argument("--nu", type=float, help="barrier parameter (default: inferred from row 0)")
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("gen", help="write an example problem file")
    p.add_argument("example", choices=sorted(EXAMPLES))
    p.add_argument("params", nargs="*", type=float)
    p.add_argument("--seed", type=int, help="seed (default: CONEPREDICTOR_SEED or built-in)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("version", help="print the version")
    p.set_defaults(func=cmd_version)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleStart as exc:
        print(f"error: InfeasibleStart: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ConeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
