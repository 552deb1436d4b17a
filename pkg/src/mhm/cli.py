"""Command-line interface.

Subcommands: ``check-axioms``, ``rho``, ``perp``, ``delta``,
``verify --suite <name>``, ``fuzz``.  Point values are radians by default;
with ``--chart-omega <angle>`` numeric point arguments are read as chart
coordinates in the chart sending that angle to infinity (the token ``inf``
names the remote point itself).

Exit codes: 0 pass, 1 check failure, 2 usage or configuration error.
The environment variable MHM_THREADS caps worker parallelism; execution is
currently sequential (one worker), which trivially respects any cap, and
per-sample RNG streams keep reports byte-stable either way.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .circle import CirclePoint, PointPair
from .errors import MhmError
from .lines import common_perpendicular, rho
from .reports import ExperimentConfig, format_chart_value
from .structures import chart_coord, chart_point, structure_from_name
from .suites import SUITES, run_suite
from .zigzag import (
    certificate_params,
    delta_lower_certificate,
    delta_upper,
    hm_displacement,
)
from .structures import HarmonicPair


def _threads() -> int:
    raw = os.environ.get("MHM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _parse_value(text: str, chart_omega: float | None) -> CirclePoint:
    text = text.strip()
    if chart_omega is not None:
        if text in ("inf", "+inf", "-inf"):
            return CirclePoint(chart_omega)
        return chart_point(chart_omega, float(text))
    if text in ("inf", "+inf", "-inf"):
        raise ValueError("'inf' requires --chart-omega")
    return CirclePoint(float(text))


def _parse_points(text: str, chart_omega: float | None, n: int) -> list[CirclePoint]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != n:
        raise ValueError(f"expected {n} comma-separated values, got {len(parts)}")
    return [_parse_value(p, chart_omega) for p in parts]


def _describe(point: CirclePoint, chart_omega: float | None) -> str:
    if chart_omega is None:
        return f"{point.theta!r}"
    coord = chart_coord(chart_omega, point.theta)
    return f"{point.theta!r} (chart {format_chart_value(coord)})"


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--structure", default="canonical",
                        help="canonical | snowflake:<p> | table:<file>")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=1000)
    parser.add_argument("--alpha", type=float, default=1.0 - 1e-6)
    parser.add_argument("--epsilon", type=float, default=1.0 / 32.0)
    parser.add_argument("--tol", type=float, default=None,
                        help="override the suite pass tolerance")
    parser.add_argument("--min-gap", type=float, default=1e-2,
                        help="minimum angular gap enforced by samplers")
    parser.add_argument("--budget", type=int, default=0,
                        help="refinement budget for distance upper bounds")
    parser.add_argument("--chart-omega", type=float, default=None,
                        help="read/write point values as chart coordinates")
    parser.add_argument("--out", default=None, help="report output path")
    parser.add_argument("--format", dest="fmt", choices=("json", "csv"),
                        default="json")
    parser.add_argument("--timing", action="store_true",
                        help="include wall time in the report (breaks byte reproducibility)")


def _config_from(args: argparse.Namespace, suite: str) -> ExperimentConfig:
    return ExperimentConfig(
        structure=args.structure,
        suite=suite,
        samples=args.samples,
        seed=args.seed,
        alpha=args.alpha,
        epsilon=args.epsilon,
        tol=args.tol,
        min_gap=args.min_gap,
        budget=args.budget,
        chart_omega=args.chart_omega,
        out=args.out,
        fmt=args.fmt,
    )


def _emit_report(report, args) -> int:
    text = report.serialize(args.fmt, include_runtime=args.timing)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"report written to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    status = "PASS" if report.passed else "FAIL"
    print(f"suite {report.config['suite']}: {status} "
          f"({report.summary.get('violations', 0)} violations, "
          f"{report.runtime_seconds:.2f}s)", file=sys.stderr)
    return 0 if report.passed else 1


def _cmd_verify(args) -> int:
    cfg = _config_from(args, args.suite)
    return _emit_report(run_suite(cfg), args)


def _cmd_check_axioms(args) -> int:
    cfg = _config_from(args, "axioms")
    return _emit_report(run_suite(cfg), args)


def _cmd_fuzz(args) -> int:
    cfg = _config_from(args, "fuzz")
    return _emit_report(run_suite(cfg), args)


def _cmd_rho(args) -> int:
    M = structure_from_name(args.structure)
    a, b = _parse_points(args.axis, args.chart_omega, 2)
    x = _parse_value(args.point, args.chart_omega)
    y = rho(M, PointPair(a, b), x)
    print(f"rho = {_describe(y, args.chart_omega)}")
    return 0


def _cmd_perp(args) -> int:
    M = structure_from_name(args.structure)
    b1 = PointPair(*_parse_points(args.pair1, args.chart_omega, 2))
    b2 = PointPair(*_parse_points(args.pair2, args.chart_omega, 2))
    s = common_perpendicular(M, b1, b2)
    print(f"perpendicular: {_describe(s.p, args.chart_omega)}, "
          f"{_describe(s.q, args.chart_omega)}")
    return 0


def _cmd_delta(args) -> int:
    M = structure_from_name(args.structure)
    p1 = _parse_points(args.q, args.chart_omega, 4)
    p2 = _parse_points(args.q2, args.chart_omega, 4)
    q = HarmonicPair(PointPair(p1[0], p1[1]), PointPair(p1[2], p1[3]))
    q2 = HarmonicPair(PointPair(p2[0], p2[1]), PointPair(p2[2], p2[3]))
    upper = delta_upper(M, q, q2, budget=args.budget)
    params = certificate_params(args.alpha, args.epsilon)
    cert = delta_lower_certificate(M, q, q2, params, args.alpha)
    disp = hm_displacement(M, q, q2)
    print(f"displacement = {disp!r}")
    print(f"upper bound  = {upper!r}")
    print(f"certificate  = {'n/a' if cert is None else repr(cert)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mhm",
        description="Harmonic-pair calculus on the circle: axioms, lines, strips, zz-distance.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("check-axioms", help="axiom slacks and alpha estimate")
    _add_common(p)
    p.set_defaults(func=_cmd_check_axioms)

    p = sub.add_parser("fuzz", help="random falsification hunt")
    _add_common(p)
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("rho", help="project a point onto a line")
    p.add_argument("--axis", required=True, help="two comma-separated values")
    p.add_argument("--point", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_rho)

    p = sub.add_parser("perp", help="common perpendicular of two pairs")
    p.add_argument("--pair1", required=True)
    p.add_argument("--pair2", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_perp)

    p = sub.add_parser("delta", help="zz-distance bounds between two harmonic pairs")
    p.add_argument("--q", required=True, help="x,y,v,w of the first pair")
    p.add_argument("--q2", required=True, help="x,y,v,w of the second pair")
    _add_common(p)
    p.set_defaults(func=_cmd_delta)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _ = _threads()
    try:
        return args.func(args)
    except MhmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
