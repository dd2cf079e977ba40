"""``blossomspin`` command line.

Exit codes: 0 success / every check passed, 1 some check failed,
2 malformed input or usage, 3 a check raised instead of returning.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from ..bernstein import BezierCurve, evaluate
from ..errors import NumericalError
from ..poisson_curve import PoissonCurve, evaluate_poisson
from ..projective import SphereAngles
from ..spin import SpinState, coherent_state, eigenstate, majorana_stars
from . import plots
from .fmt import dumps, human, machine
from .report import MAX_DEGREE, ToleranceError, report_document, resolve_tolerances, run_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load(path, cls):
    data = _read_json(path)
    try:
        return cls.from_dict(data)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def format_point(point) -> str:
    """Documented number format for points: coordinates at 17 digits, space separated."""
    return " ".join(machine(x) for x in point)


def cmd_eval(args) -> int:
    if args.poisson:
        curve = _load(args.curve_file, PoissonCurve)
        if args.t < 0:
            raise InputError(f"t must be non-negative for a Poisson curve, got {args.t}")
        res = evaluate_poisson(curve, args.t)
        point = res.point
        if res.warning:
            print(f"warning: {res.warning}", file=sys.stderr)
        extra = {"neglected_weight": res.neglected_weight}
    else:
        curve = _load(args.curve_file, BezierCurve)
        point = evaluate(curve, args.t)
        extra = {}
    if args.json:
        _emit(dumps({"t": args.t, "point": [float(x) for x in point], **extra}) + "\n", args.out)
    else:
        _emit(format_point(point) + "\n", args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    if not 1 <= args.degree <= MAX_DEGREE:
        raise InputError(f"degree must lie in [1, {MAX_DEGREE}], got {args.degree}")
    try:
        tolerances = resolve_tolerances(args.tolerance_file)
    except ToleranceError as exc:
        raise InputError(str(exc)) from exc
    entries = run_report(args.degree, args.seed, tolerances)
    text = dumps(report_document(args.degree, args.seed, entries)) + "\n"
    if args.out:
        _emit(text, args.out)
    if args.json:
        sys.stdout.write(text)
    else:
        for e in entries:
            status = "ERROR" if e.error else ("pass" if e.passed else "FAIL")
            err = "-" if e.max_error is None else human(e.max_error)
            print(f"{status:5}  {e.check_name:24} max_error={err:>12}  tol={human(e.tolerance):>8}  {e.error or e.detail}")
    if any(e.error for e in entries):
        return EXIT_ERROR
    return EXIT_OK if all(e.passed for e in entries) else EXIT_FAIL


def _state_for(args) -> SpinState:
    if args.state:
        return _load(args.state, SpinState)
    if args.eigen is not None:
        try:
            return eigenstate(args.degree, args.eigen)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    return coherent_state(args.degree, _angles(args))


def _angles(args) -> SphereAngles:
    try:
        return SphereAngles(args.theta, args.phi)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_plot(args) -> int:
    if args.degree < 1:
        raise InputError(f"degree must be positive, got {args.degree}")
    if args.kind == "basis":
        text = plots.plot_basis(args.degree, args.csv)
    elif args.kind == "curve":
        if not args.curve:
            raise InputError("plot curve needs --curve FILE")
        text = plots.plot_curve(_load(args.curve, BezierCurve), args.csv)
    elif args.kind == "stars":
        text = plots.plot_stars(_state_for(args), args.csv)
    elif args.kind == "distribution":
        text = plots.plot_distribution(args.degree, _angles(args), args.csv)
    else:
        if args.dt <= 0 or args.steps < 0:
            raise InputError("precession needs dt > 0 and steps >= 0")
        text = plots.plot_precession(args.degree, args.theta, args.dt, args.steps, args.csv)
    _emit(text, args.out)
    return EXIT_OK


def cmd_stars(args) -> int:
    state = _load(args.state_file, SpinState)
    if state.d < 1:
        raise InputError("a d = 0 state has no stars")
    stars = majorana_stars(state)
    _emit(dumps(stars.to_list()) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="blossomspin", description="Bezier curves and their spin/oscillator counterparts.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate a curve file at t")
    e.add_argument("curve_file")
    e.add_argument("t", type=float)
    e.add_argument("--poisson", action="store_true", help='file is a Poisson curve {"points": ...}')
    e.add_argument("--json", action="store_true")
    e.add_argument("--out")
    e.set_defaults(func=cmd_eval)

    r = sub.add_parser("report", help="run every correspondence check")
    r.add_argument("--degree", "-d", type=int, default=4)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--tolerance-file")
    r.add_argument("--out", help="write the JSON report here")
    r.add_argument("--json", action="store_true", help="print the JSON report instead of the table")
    r.set_defaults(func=cmd_report)

    g = sub.add_parser("plot", help="write an SVG (or CSV) figure")
    g.add_argument("kind", choices=plots.KINDS)
    g.add_argument("--degree", "-d", type=int, default=4)
    g.add_argument("--curve", help="curve JSON for kind=curve")
    g.add_argument("--state", help="state JSON for kind=stars")
    g.add_argument("--eigen", type=int, help="eigenstate index k for kind=stars")
    g.add_argument("--theta", type=float, default=math.pi / 3, help="colatitude (coherent state / precession tilt)")
    g.add_argument("--phi", type=float, default=0.0)
    g.add_argument("--dt", type=float, default=1e-2)
    g.add_argument("--steps", type=int, default=628)
    g.add_argument("--csv", action="store_true")
    g.add_argument("--out")
    g.set_defaults(func=cmd_plot)

    s = sub.add_parser("stars", help="Majorana stars of a state file (JSON)")
    s.add_argument("state_file")
    s.add_argument("--out")
    s.set_defaults(func=cmd_stars)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # usage errors exit with 2
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalError, ArithmeticError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
