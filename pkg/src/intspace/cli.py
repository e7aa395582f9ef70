"""Command-line interface: ``intspace <command> [flags]``.

Every command writes a CSV table with a header row to stdout and
diagnostics to stderr. Floats are printed with ``repr`` so they round-trip.

Exit codes: 0 success, 1 domain or parameter error (including failed
verification and unreadable input), 2 usage error, 3 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from . import closedform, quadrature
from .checks import run_checks
from .closedform import IntervalSpec
from .errors import ConvergenceError, DomainError, IntSpaceError, QuadratureError
from .profile import compute_profile, load_csv
from .simulate import SimulationConfig, replicate_stream, run_simulation, sample_sorted
from .spectral import autocovariance, expected_lobe_counts, filter_equivalence
from .variates import parse_model

__all__ = ["CommandResult", "build_parser", "main", "run"]

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_CONVERGENCE = 0, 1, 2, 3


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    stdout: str
    stderr: str


def _fmt(x) -> str:
    return "" if x is None else repr(float(x))


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _column(text: str):
    return int(text) if text.strip().lstrip("-").isdigit() else text


# commands --------------------------------------------------------------------

def cmd_moments(args, out, err) -> int:
    model = parse_model(args.dist)
    spec = IntervalSpec(args.n, args.i, args.w)
    if args.method == "closed":
        mean = closedform.mean(spec, model)
        var = closedform.variance(spec, model)
        error = None
        if var is None:
            err.write("note: no closed-form variance is available for the logistic model; "
                      "use --method quad or --method sim\n")
        method = "closed_form"
    elif args.method == "quad":
        res = quadrature.generic_moments(spec, model)
        mean, var, error, method = res.mean, res.variance, res.abs_error_estimate, res.method
    else:
        cfg = SimulationConfig(model, args.n, args.reps, args.seed, (args.w,))
        summary = run_simulation(cfg, [args.i], workers=args.workers)
        st = summary[(args.i, args.w)]
        mean, var, method = st.empirical_mean, st.empirical_variance, "simulation"
        error = summary.standard_error(args.i, args.w)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["dist", "n", "i", "w", "method", "mean", "variance", "error_estimate"])
    writer.writerow([model.to_string(), spec.n, spec.i, spec.w, method, _fmt(mean), _fmt(var), _fmt(error)])
    return EXIT_OK


def cmd_density(args, out, err) -> int:
    model = parse_model(args.dist)
    spec = IntervalSpec(args.n, args.i, args.w)
    if args.points < 2 or not args.y_max > args.y_min:
        raise DomainError("need --points >= 2 and --y-max > --y-min")
    ys = np.linspace(args.y_min, args.y_max, args.points)
    fs = closedform.density(spec, model, ys)
    out.write("y,f\n")
    for y, f in zip(ys, fs):
        out.write(f"{float(y)!r},{float(f)!r}\n")
    return EXIT_OK


def cmd_simulate(args, out, err) -> int:
    model = parse_model(args.dist)
    cfg = SimulationConfig(model, args.n, args.reps, args.seed, tuple(args.w_list))
    summary = run_simulation(cfg, args.i_list, workers=args.workers)
    closed = {(i, w): closedform.mean(IntervalSpec(args.n, i, w), model) for i, w in summary.keys()}
    out.write(summary.to_csv(closed))
    return EXIT_OK


def cmd_verify(args, out, err) -> int:
    results = run_checks(args.max_n, args.max_w, args.seed)
    out.write("check,cases,max_abs_err,status\n")
    for r in results:
        out.write(f"{r.check},{r.cases},{r.max_abs_err!r},{r.status}\n")
    failed = [r for r in results if not r.passed]
    for r in failed:
        err.write(f"FAILED {r.check} {r.detail}\n")
    return EXIT_DOMAIN if failed else EXIT_OK


def cmd_spectrum(args, out, err) -> int:
    model = parse_model(args.dist)
    x = sample_sorted(model, args.n, replicate_stream(args.seed, 0))
    rep = filter_equivalence(x, args.w, alignment=args.alignment)
    out.write(rep.to_csv())
    err.write(f"convolution deviation {rep.convolution_deviation:.3g} ({'ok' if rep.convolution_ok else 'FAIL'}); "
              f"max relative ratio error {rep.max_relative_error:.3g} over {int(rep.retained.sum())} bins; "
              f"zeros/side lobes {rep.zeros}/{rep.side_lobes} "
              f"(kernel {expected_lobe_counts(args.w)[0]}/{expected_lobe_counts(args.w)[1]})\n")
    return EXIT_OK


def cmd_autocov(args, out, err) -> int:
    model = parse_model(args.dist)
    max_lag = args.max_lag if args.max_lag is not None else min(args.w + 5, args.i - args.w - 1)
    cfg = SimulationConfig(model, args.n, args.reps, args.seed, (args.w,))
    rep = autocovariance(cfg, args.i, args.w, max_lag, workers=args.workers)
    out.write(rep.to_csv())
    return EXIT_OK


def cmd_profile(args, out, err) -> int:
    data = load_csv(args.input, args.column)
    prof = compute_profile(data, args.w_list)
    out.write(prof.to_csv())
    return EXIT_OK


# parser ----------------------------------------------------------------------

def _add_spec(p, dist_default=None):
    p.add_argument("--dist", required=dist_default is None, default=dist_default,
                   help="uniform:a,b | exp:lambda | logistic:mu,sigma")
    p.add_argument("--n", type=int, required=True, help="sample size")
    p.add_argument("--i", type=int, required=True, help="upper order-statistic index (1-based)")
    p.add_argument("--w", type=int, required=True, help="interval width")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="intspace",
                                     description="Interval spacings of order statistics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="mean and variance of D_{i,w}")
    _add_spec(p)
    p.add_argument("--method", choices=("closed", "quad", "sim"), default="closed")
    p.add_argument("--reps", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("density", help="closed-form density on a grid")
    _add_spec(p)
    p.add_argument("--y-min", type=float, default=0.0)
    p.add_argument("--y-max", type=float, required=True)
    p.add_argument("--points", type=int, default=101)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("simulate", help="Monte Carlo summaries with closed-form means")
    p.add_argument("--dist", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--w-list", type=_int_list, required=True, help="comma-separated widths")
    p.add_argument("--i-list", type=_int_list, default=None,
                   help="comma-separated indices (default: every valid i per width)")
    p.add_argument("--reps", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run the identity suites")
    p.add_argument("--max-n", type=int, default=20)
    p.add_argument("--max-w", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="spectral filter check on one sample")
    p.add_argument("--dist", default="uniform:0,1")
    p.add_argument("--n", type=int, default=1200)
    p.add_argument("--w", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alignment", choices=("full", "truncated"), default="full")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("autocov", help="lag covariance of D_{i,w} across replicates")
    p.add_argument("--dist", default="uniform:0,1")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--w", type=int, default=10)
    p.add_argument("--i", type=int, default=120)
    p.add_argument("--reps", type=int, default=5000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-lag", type=int, default=None, help="default: min(w+5, i-w-1)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_autocov)

    p = sub.add_parser("profile", help="spacing profile of a CSV column")
    p.add_argument("--input", required=True)
    p.add_argument("--column", type=_column, default=0, help="zero-based index or header name")
    p.add_argument("--w-list", type=_int_list, default=[1, 8, 32])
    p.set_defaults(func=cmd_profile)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> CommandResult:
    """Execute a command and capture its output instead of printing it."""
    out, err = io.StringIO(), io.StringIO()
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return CommandResult(code, out.getvalue(), err.getvalue())
    try:
        code = args.func(args, out, err)
    except (ConvergenceError, QuadratureError) as exc:
        err.write(f"error: numerical non-convergence: {exc}\n")
        return CommandResult(EXIT_CONVERGENCE, "", err.getvalue())
    except (IntSpaceError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return CommandResult(EXIT_DOMAIN, "", err.getvalue())
    return CommandResult(code, out.getvalue(), err.getvalue())


def main(argv: Optional[Sequence[str]] = None) -> int:
    result = run(argv)
    try:
        sys.stdout.write(result.stdout)
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); not an error here
        sys.stdout = None
    sys.stderr.write(result.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
