"""Command-line front end: ``bisphere {compute,scan,critical-ratio,min-distance,verify}``."""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import analysis, svg, verify
from .errors import BisphereError, DomainError
from .geometry import SphereParams
from .heatloss import Method, SeriesOptions, heat_loss

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

DEFAULT_PRECISION = 12
PRECISION_ENV = "BISPHERE_PRECISION"

METHODS = {"direct": Method.DIRECT, "em": Method.EULER_MACLAURIN, "auto": Method.AUTO}


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    subcommand: str
    args: argparse.Namespace
    precision: int
    out_path: Optional[str] = None
    svg_path: Optional[str] = None

    def fmt(self, value: float) -> str:
        return f"{value:.{self.precision}g}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bisphere",
        description="Heat loss of two isothermal spheres in an infinite medium.")
    parser.add_argument("--precision", type=int, default=None,
                        help=f"significant digits in printed numbers (default {DEFAULT_PRECISION}, "
                             f"or ${PRECISION_ENV})")
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="COMMAND")

    p = sub.add_parser("compute", help="Q1, Q2 and Q at a single gap")
    p.add_argument("--r1", type=float, required=True)
    p.add_argument("--r2", type=float, required=True)
    p.add_argument("--d", type=float, required=True, help="gap between the sphere surfaces")
    p.add_argument("--t1", type=float, default=1.0)
    p.add_argument("--t2", type=float, default=1.0)
    p.add_argument("--method", choices=sorted(METHODS), default="auto")
    p.add_argument("--tol", type=float, default=1e-10)

    p = sub.add_parser("scan", help="CSV of Q1, Q2, Q over a grid of gaps")
    p.add_argument("--r1", type=float, required=True)
    p.add_argument("--r2", type=float, required=True)
    p.add_argument("--t1", type=float, default=1.0)
    p.add_argument("--t2", type=float, default=1.0)
    p.add_argument("--d-min", type=float, required=True)
    p.add_argument("--d-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--log", action="store_true", help="logarithmic spacing (needs d-min > 0)")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", help="CSV path (default: standard output)")
    p.add_argument("--svg", help="also write a Q1 vs d line chart here")
    p.add_argument("--svg-width", type=int, default=800)
    p.add_argument("--svg-height", type=int, default=500)

    p = sub.add_parser("critical-ratio", help="radius ratio where the contact slope of Q1 changes sign")
    p.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("min-distance", help="gap minimising Q1 for equal temperatures")
    p.add_argument("--r1", type=float, required=True)
    p.add_argument("--r2", type=float, required=True)
    p.add_argument("--t0", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("verify", help="run the independent verification suites")
    p.add_argument("--suite", choices=("all",) + verify.SUITES, default="all")
    return parser


def _precision(flag: Optional[int]) -> int:
    if flag is not None:
        value = flag
    else:
        raw = os.environ.get(PRECISION_ENV)
        if raw is None or raw.strip() == "":
            return DEFAULT_PRECISION
        try:
            value = int(raw)
        except ValueError:
            raise UsageError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None
    if not 1 <= value <= 17:
        raise UsageError(f"precision must lie in [1, 17], got {value}")
    return value


def _series_options(args) -> SeriesOptions:
    method = METHODS[getattr(args, "method", "auto")]
    return SeriesOptions(tol=args.tol, method=method)


def validate(args: argparse.Namespace) -> CliConfig:
    """Check every flag before any computation; raises UsageError."""
    config = CliConfig(args.subcommand, args, _precision(args.precision),
                       getattr(args, "out", None), getattr(args, "svg", None))
    try:
        if args.subcommand == "compute":
            SphereParams(args.r1, args.r2, args.d, args.t1, args.t2)
            _series_options(args)
        elif args.subcommand == "scan":
            SphereParams(args.r1, args.r2, 0.0, args.t1, args.t2)
            _series_options(args)
            analysis.scan_grid(args.d_min, args.d_max, args.steps, args.log)
            if args.d_min == 0.0 and args.t1 != args.t2:
                raise DomainError("a scan starting at d = 0 needs equal temperatures")
            if args.svg_width < 200 or args.svg_height < 150:
                raise DomainError("SVG must be at least 200 x 150")
        elif args.subcommand == "critical-ratio":
            if not 0.0 < args.tol <= 1e-2:
                raise DomainError(f"tol must lie in (0, 1e-2], got {args.tol!r}")
        elif args.subcommand == "min-distance":
            SphereParams(args.r1, args.r2, 0.0, args.t0, args.t0)
            if not 0.0 < args.tol < 1.0:
                raise DomainError(f"tol must lie in (0, 1), got {args.tol!r}")
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    return config


def run_compute(cfg: CliConfig, out) -> int:
    a = cfg.args
    res = heat_loss(SphereParams(a.r1, a.r2, a.d, a.t1, a.t2), _series_options(a))
    out.write(f"Q1={cfg.fmt(res.q1)}\n")
    out.write(f"Q2={cfg.fmt(res.q2)}\n")
    out.write(f"Q={cfg.fmt(res.q_total)}\n")
    out.write(f"err<={cfg.fmt(res.err_estimate)}\n")
    out.write(f"method={res.method_used}\n")
    out.write(f"terms={res.terms_used}\n")
    return EXIT_OK


def scan_csv(result: analysis.ScanResult, fmt) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["d", "q1", "q2", "q_total"])
    for row in result.rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def run_scan(cfg: CliConfig, out) -> int:
    a = cfg.args
    p = SphereParams(a.r1, a.r2, a.d_min, a.t1, a.t2)
    result = analysis.scan(p, a.d_min, a.d_max, a.steps, a.log, _series_options(a))
    # everything is rendered before anything is written, so a failure leaves no partial files
    text = scan_csv(result, cfg.fmt)
    chart = None
    if cfg.svg_path:
        chart = svg.line_chart(result.column("d"), result.column("q1"), "d", "Q1",
                               a.svg_width, a.svg_height)
    if cfg.out_path:
        with open(cfg.out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    if chart is not None:
        with open(cfg.svg_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(chart)
    flags = " ".join(f"{k}={v.value}" for k, v in result.monotone_flags.items())
    d_min, q_min = result.minimum
    print(f"{flags} min_d={cfg.fmt(d_min)} min_q1={cfg.fmt(q_min)}", file=sys.stderr)
    return EXIT_OK


def run_critical_ratio(cfg: CliConfig, out) -> int:
    out.write(f"l={cfg.fmt(analysis.critical_ratio(cfg.args.tol))}\n")
    return EXIT_OK


def run_min_distance(cfg: CliConfig, out) -> int:
    a = cfg.args
    m = analysis.min_distance(a.r1, a.r2, a.t0, a.tol)
    out.write(f"d_star={cfg.fmt(m.d_star)}\n")
    out.write(f"q1_min={cfg.fmt(m.q1_star)}\n")
    out.write(f"boundary={'true' if m.boundary else 'false'}\n")
    return EXIT_OK


def run_verify(cfg: CliConfig, out) -> int:
    checks = verify.run(cfg.args.suite)
    out.write(verify.format_table(checks))
    failed = verify.failing_suites(checks)
    if failed:
        for c in checks:
            if not c.passed:
                print(f"FAIL [{c.suite}] {c.name}: observed {c.observed:.6g}, limit {c.limit:.6g}",
                      file=sys.stderr)
        print(f"failing suites: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


RUNNERS = {
    "compute": run_compute,
    "scan": run_scan,
    "critical-ratio": run_critical_ratio,
    "min-distance": run_min_distance,
    "verify": run_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for bad usage
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        cfg = validate(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"bisphere: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return RUNNERS[cfg.subcommand](cfg, sys.stdout)
    except (BisphereError, ValueError, ArithmeticError) as exc:
        print(f"bisphere: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
