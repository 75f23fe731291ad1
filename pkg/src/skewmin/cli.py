"""Command line: ``skewmin compute | suite | bench``.

Exit codes: 0 success, 1 unreadable or malformed input, 2 invalid state or
parameters, 3 non-convergence under ``--strict``.
"""
import argparse
import json
import logging
import statistics
import sys
import time

import numpy as np

from . import states
from .engine import MinConfig, min_skew
from .errors import NotConverged, SkewMinError
from .suites import FAMILIES, SuiteSpec, fmt, iter_suite, write_csv
from .svg import suite_chart

log = logging.getLogger("skewmin")

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_NOT_CONVERGED = 0, 1, 2, 3


def _config(args, dim_b):
    basis_b = None
    if args.basis_b == "random":
        basis_b = states.haar_unitary(dim_b, args.seed)
    return MinConfig(degeneracy_tol=args.tol_degeneracy, sweep_tol=args.tol_sweep,
                     max_sweeps=args.max_sweeps, basis_b=basis_b, strict=args.strict)


def cmd_compute(args):
    try:
        with open(args.input) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        log.error("cannot read %s: %s", args.input, exc)
        return EXIT_INPUT
    try:
        state = states.state_from_dict(obj)
    except SkewMinError as exc:
        log.error("invalid state: %s", exc)
        return EXIT_INVALID
    except (KeyError, TypeError) as exc:
        log.error("malformed state file: %s", exc.args[0] if exc.args else exc)
        return EXIT_INPUT
    try:
        report = min_skew(state, _config(args, state.dim_b))
    except NotConverged as exc:
        log.error("%s", exc)
        return EXIT_NOT_CONVERGED
    text = json.dumps(report.to_dict(), indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_suite(args):
    lo, hi = args.x_min, args.x_max
    if args.family == "ppt":
        lo = args.alpha_min if args.alpha_min is not None else lo
        hi = args.alpha_max if args.alpha_max is not None else hi
    spec = SuiteSpec(args.family, args.m, args.n, args.points, lo, hi, args.seed,
                     args.hybrid_oracle)
    config = MinConfig(degeneracy_tol=args.tol_degeneracy, sweep_tol=args.tol_sweep,
                       max_sweeps=args.max_sweeps)
    try:
        spec = spec.resolved()
    except SkewMinError as exc:
        log.error("%s", exc)
        return EXIT_INVALID

    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    rows = []
    status = EXIT_OK
    try:
        def collect():
            for row in iter_suite(spec, config):
                if row.note:
                    log.warning("%s %s=%s: %s", row.family, row.param_name,
                                fmt(row.param_value), row.note)
                rows.append(row)
                yield row
        write_csv(collect(), out, timing=not args.no_timing)
    except SkewMinError as exc:
        log.error("suite aborted after %d rows: %s", len(rows), exc)
        status = EXIT_INVALID
    finally:
        if out is not sys.stdout:
            out.close()
    if args.plot and rows:
        with open(args.plot, "w") as fh:
            fh.write(suite_chart(rows, title=f"{spec.family} m={spec.m} n={spec.n}"))
    errs = [r.abs_error for r in rows if r.abs_error is not None]
    if errs:
        log.info("max abs error %.3e over %d points", max(errs), len(errs))
    return status


def _parse_dims(text):
    try:
        m, n = (int(t) for t in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MxN, got {text!r}")
    if m < 1 or n < 1:
        raise argparse.ArgumentTypeError("dimensions must be positive")
    return m, n


def cmd_bench(args):
    m, n = args.dims
    seeds = np.random.SeedSequence(args.seed).spawn(args.samples)
    times = []
    print("sample\twall_time_s\tblocks\tsweeps\trotations_per_sweep\trotations_applied")
    for i, child in enumerate(seeds):
        try:
            state = states.mixed_interpolation(m, args.x, child, n)
            if args.degenerate:
                k = args.degenerate
                if not 2 <= k <= m:
                    raise SkewMinError(f"--degenerate must be in [2, {m}]")
                rest = m - k
                spectrum = np.full(m, 1.0 / m)
                if rest:
                    # k-fold top eigenvalue, distinct remainder
                    spectrum[:rest] = np.linspace(0.5, 1.5, rest) / m
                    spectrum[rest:] = (1 - spectrum[:rest].sum()) / k
                state = states.with_reduced_spectrum(state, spectrum, child)
        except SkewMinError as exc:
            log.error("%s", exc)
            return EXIT_INVALID
        t0 = time.perf_counter()
        report = min_skew(state, MinConfig(max_sweeps=args.max_sweeps))
        dt = time.perf_counter() - t0
        times.append(dt)
        per_sweep = sum(r.dimension * (r.dimension - 1) // 2
                        for r in report.subspace_reports)
        print(f"{i}\t{dt:.6f}\t{len(report.subspace_reports)}\t{report.sweeps}\t"
              f"{per_sweep}\t{report.rotations}")
    mean = statistics.fmean(times)
    print(f"mean\t{mean:.6f}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="skewmin",
        description="Skew-information measurement-induced non-locality.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true",
                        help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_flags(p, max_sweeps=200):
        p.add_argument("--tol-degeneracy", type=float, default=1e-8)
        p.add_argument("--tol-sweep", type=float, default=1e-12)
        p.add_argument("--max-sweeps", type=int, default=max_sweeps)

    p = sub.add_parser("compute", parents=[common], help="MIN of a state stored as JSON")
    p.add_argument("input")
    solver_flags(p)
    p.add_argument("--output", "-o")
    p.add_argument("--basis-b", choices=("computational", "random"),
                   default="computational")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict", action="store_true",
                   help="fail (exit 3) if a degenerate subspace does not converge")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("suite", parents=[common], help="numeric vs closed form over a family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--points", type=int)
    p.add_argument("--x-min", type=float)
    p.add_argument("--x-max", type=float)
    p.add_argument("--alpha-min", type=float)
    p.add_argument("--alpha-max", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.add_argument("--plot")
    p.add_argument("--hybrid-oracle", choices=("printed", "corrected"),
                   default="printed",
                   help="closed form used for the m = 3 hybrid family")
    p.add_argument("--no-timing", action="store_true",
                   help="leave wall_time_s empty so output is byte-stable")
    solver_flags(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("bench", parents=[common], help="timing on random mixed states")
    p.add_argument("--dims", type=_parse_dims, default=(4, 4))
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--x", type=float, default=0.5)
    p.add_argument("--degenerate", type=int, default=0,
                   help="force a k-fold degenerate block in rho_A")
    p.add_argument("--max-sweeps", type=int, default=200)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
