"""Command-line surface: sweeps, scaling fits, fixed point, validation.

Exit codes: 0 success, 2 usage error, 3 numeric/runtime failure (with a
diagnostic naming the failing input).  Sweep artifacts are CSV by default
(plot-ready columns); scalar results are JSON.  ``--plot`` additionally
renders a figure next to the delimited output.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import analysis, ising
from .analysis import (
    ISING_DEFAULT_GRID,
    ISING_DEFAULT_STEPS,
    ISING_SCALING_STEPS,
    XY_DEFAULT_GRID,
    XY_DEFAULT_STEPS,
    XY_SCALING_GRID,
    XY_SCALING_STEPS,
    SweepSpec,
    coherence_sweep,
    add_derivatives,
    scaling_analysis,
)
from .output import (
    fixed_point_to_json,
    rows_to_csv,
    rows_to_json,
    scaling_to_json,
    write_text_atomic,
)
from .validate import run_checks

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _parse_grid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be MIN:MAX:POINTS, got {text!r}")
    try:
        lo, hi, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from exc
    return lo, hi, points


def _parse_steps(text):
    try:
        steps = tuple(int(s) for s in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad steps list {text!r}: {exc}") from exc
    if not steps:
        raise argparse.ArgumentTypeError("steps list is empty")
    return steps


def _parse_subsystem(text):
    if text == "all":
        return ()
    try:
        sites = tuple(int(s) for s in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad subsystem {text!r}: {exc}") from exc
    return sites


def _parse_bracket(text):
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"bracket must be LO:HI, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad bracket {text!r}: {exc}") from exc


def _positive_tol(text):
    try:
        tol = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad tolerance {text!r}") from exc
    if tol <= 0:
        raise argparse.ArgumentTypeError(f"tolerance must be positive, got {tol}")
    return tol


def _add_sweep_args(sub, model, grid_default, steps_default):
    sub.add_argument("--grid", type=_parse_grid, default=grid_default,
                     help="coupling grid as MIN:MAX:POINTS")
    sub.add_argument("--steps", type=_parse_steps, default=steps_default,
                     help="comma-separated renormalization step counts")
    sub.add_argument("--subsystem", type=_parse_subsystem, action="append",
                     help="'all' or comma-separated 1-based site indices; repeatable")
    sub.add_argument("--output", default=f"{model}_sweep.csv", help="output path")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--threads", type=int, default=0, help="worker threads (0 = auto)")
    sub.add_argument("--plot", metavar="PATH", default=None,
                     help="also render the sweep to this image file")


# grid/bracket values like -1:1:2001 start with a dash; make every parser
# treat dash-digit tokens as values, not option names
_DASH_NUMBER = re.compile(r"^-\d[\d.,:eE+-]*$")


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = _DASH_NUMBER


def build_parser():
    parser = _Parser(
        prog="qrgcoh",
        description="Coherence analysis of renormalization flows for the "
                    "2D anisotropic-XY and transverse-field Ising models.",
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    xy_sweep = commands.add_parser("xy-sweep", help="coherence sweep over the anisotropy")
    _add_sweep_args(xy_sweep, "xy", XY_DEFAULT_GRID, XY_DEFAULT_STEPS)

    ising_sweep = commands.add_parser("ising-sweep", help="coherence sweep over the field")
    _add_sweep_args(ising_sweep, "ising", ISING_DEFAULT_GRID, ISING_DEFAULT_STEPS)

    scaling = commands.add_parser("scaling", help="derivative-peak scaling fit")
    scaling.add_argument("--model", choices=("xy", "ising"), required=True)
    scaling.add_argument("--steps", type=_parse_steps, default=None)
    scaling.add_argument("--grid", type=_parse_grid, default=None,
                         help="defaults: xy -1:1:125001, ising 0.01:4:2001")
    scaling.add_argument("--output", default=None, help="output path (JSON)")
    scaling.add_argument("--threads", type=int, default=0)
    scaling.add_argument("--plot", metavar="PATH", default=None)

    fixed = commands.add_parser("fixed-point", help="fixed point of the field map")
    fixed.add_argument("--bracket", type=_parse_bracket, default=(1.0, 3.0))
    fixed.add_argument("--tol", type=_positive_tol, default=1e-10)
    fixed.add_argument("--output", default="fixed_point.json")

    validate = commands.add_parser("validate", help="closed-form vs numeric oracle suite")
    validate.add_argument("--gamma-grid", type=int, default=50,
                          help="number of anisotropy samples")
    validate.add_argument("--tol", type=_positive_tol, default=1e-8,
                          help="closed-form state match tolerance")

    return parser


def _auto_threads(requested):
    # auto = serial: the per-point eigenproblems are too small for thread
    # handoff to pay off; explicit --threads N still fans out for users with
    # wider machines or custom grids.
    if requested < 0:
        raise ValueError("threads must be >= 0")
    return 1 if requested == 0 else requested


def _cmd_sweep(model, args):
    subsystems = tuple(args.subsystem) if args.subsystem else (analysis.FULL_BLOCK,)
    try:
        spec = SweepSpec(model=model, grid=args.grid, rg_steps=args.steps,
                         subsystems=subsystems)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        threads = _auto_threads(args.threads)
        rows = add_derivatives(coherence_sweep(spec, threads=threads))
        text = rows_to_csv(rows) if args.format == "csv" else rows_to_json(rows)
        write_text_atomic(args.output, text)
        print(f"wrote {len(rows)} rows to {args.output}")
        if args.plot:
            from .plotting import plot_sweep

            plot_sweep(rows, args.plot)
            print(f"wrote figure to {args.plot}")
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_scaling(args):
    steps = args.steps
    if steps is None:
        steps = XY_SCALING_STEPS if args.model == "xy" else ISING_SCALING_STEPS
    grid = args.grid
    if grid is None:
        grid = XY_SCALING_GRID if args.model == "xy" else ISING_DEFAULT_GRID
    try:
        if len(steps) < 3:
            raise ValueError("scaling needs at least 3 steps")
        SweepSpec(model=args.model, grid=grid, rg_steps=tuple(steps))  # validates only
        threads = _auto_threads(args.threads)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        peaks, fit = scaling_analysis(args.model, steps=steps, grid=grid, threads=threads)
        out = args.output or f"scaling_{args.model}.json"
        write_text_atomic(out, scaling_to_json(args.model, peaks, fit))
        print(f"theta = {fit.theta:.6f}, r^2 = {fit.r_squared:.6f}, "
              f"nu_from_theta = {fit.nu_from_theta:.6f}")
        print(f"wrote {out}")
        if args.plot:
            from .plotting import plot_scaling

            plot_scaling(args.model, peaks, fit, args.plot)
            print(f"wrote figure to {args.plot}")
    except Exception as exc:
        print(f"error: scaling failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_fixed_point(args):
    lo, hi = args.bracket
    try:
        result = ising.fixed_point(lo, hi, tol=args.tol)
        write_text_atomic(args.output, fixed_point_to_json(result))
        print(f"g_c = {result.g_c:.10f}, residual = {result.residual:.3e}, nu = {result.nu:.6f}")
        print(f"wrote {args.output}")
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_validate(args):
    if args.gamma_grid < 3:
        print("usage error: --gamma-grid must be at least 3", file=sys.stderr)
        return EXIT_USAGE
    try:
        results = run_checks(gamma_points=args.gamma_grid, tol=args.tol)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    failures = 0
    for name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
        failures += 0 if passed else 1
    if failures:
        print(f"{failures} of {len(results)} checks failed", file=sys.stderr)
        return EXIT_NUMERIC
    print(f"all {len(results)} checks passed")
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "xy-sweep":
        return _cmd_sweep("xy", args)
    if args.command == "ising-sweep":
        return _cmd_sweep("ising", args)
    if args.command == "scaling":
        return _cmd_scaling(args)
    if args.command == "fixed-point":
        return _cmd_fixed_point(args)
    if args.command == "validate":
        return _cmd_validate(args)
    parser.error(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
