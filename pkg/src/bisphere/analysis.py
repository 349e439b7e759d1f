"""Critical radius ratio, minimising distance of Q1 and distance scans."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy import optimize

from . import specfun
from .errors import BisphereError, BracketError, DomainError
from .geometry import SphereParams
from .heatloss import SeriesOptions, heat_loss, q1_contact

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# |bracket| / r2^3 below this is indistinguishable from zero slope
CRITICAL_BAND = 1e-8


def critical_equation(x: float) -> float:
    """2(1+x^3)(gamma + psi(1/(1+x))) + x^2 + x + 2(x^2 - x) psi'(1/(1+x))."""
    u = 1.0 / (1.0 + x)
    return (2.0 * (1.0 + x ** 3) * (specfun.EULER_GAMMA + specfun.digamma(u))
            + x * x + x + 2.0 * (x * x - x) * specfun.trigamma(u))


def critical_ratio(tol: float = 1e-8) -> float:
    """Radius ratio r1/r2 above which Q1 initially decreases as the spheres separate."""
    if not 0.0 < tol <= 1e-2:
        raise DomainError(f"tol must lie in (0, 1e-2], got {tol!r}")
    grid = np.linspace(1.0, 10.0, 37)
    values = [critical_equation(x) for x in grid]
    for lo, hi, f_lo, f_hi in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if f_lo == 0.0:
            return float(lo)
        if f_lo * f_hi < 0.0:
            return optimize.bisect(critical_equation, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps)
    raise BracketError("no sign change of the critical equation on [1, 10]")


class SlopeSign(str, enum.Enum):
    DECREASING_AT_CONTACT = "decreasing_at_contact"
    INCREASING_AT_CONTACT = "increasing_at_contact"
    CRITICAL = "critical"


def slope_sign(r1: float, r2: float) -> SlopeSign:
    if not (r1 > 0 and r2 > 0):
        raise DomainError("radii must be positive")
    value = critical_equation(r1 / r2)
    if abs(value) < CRITICAL_BAND:
        return SlopeSign.CRITICAL
    if value > 0:
        return SlopeSign.DECREASING_AT_CONTACT
    return SlopeSign.INCREASING_AT_CONTACT


class Minimum(NamedTuple):
    d_star: float
    q1_star: float
    boundary: bool


def golden_section(f, a: float, b: float, tol: float) -> tuple[float, float]:
    """Shrink [a, b] around the minimum of a unimodal ``f`` until b - a < tol."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a >= tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def min_distance(r1: float, r2: float, t0: float = 1.0, tol: float = 1e-6,
                 opts: SeriesOptions = SeriesOptions()) -> Minimum:
    """
    Gap d* minimising Q1 for equal temperatures.

    When Q1 does not decrease at contact the minimum sits at d = 0 and the
    result carries ``boundary=True``.
    """
    q0 = q1_contact(r1, r2, t0)
    if slope_sign(r1, r2) is not SlopeSign.DECREASING_AT_CONTACT:
        return Minimum(0.0, q0, True)

    def q1(d: float) -> float:
        if d == 0.0:
            return q0
        return heat_loss(SphereParams(r1, r2, d, t0, t0), opts).q1

    upper = r1
    while q1(upper) <= q0:
        upper *= 2.0
        if upper > 1e6 * r1:
            raise BracketError("Q1 never rises back above its contact value")
    d_star, q_star = golden_section(q1, 0.0, upper, tol * r1)
    return Minimum(d_star, q_star, False)


class Monotonicity(str, enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    NON_MONOTONE = "non-monotone"


def monotonicity(values: Sequence[float]) -> Monotonicity:
    diffs = np.diff(np.asarray(values, dtype=float))
    if np.all(diffs > 0):
        return Monotonicity.INCREASING
    if np.all(diffs < 0):
        return Monotonicity.DECREASING
    return Monotonicity.NON_MONOTONE


def monotone_runs(values: Sequence[float]) -> list[Monotonicity]:
    """Directions of the maximal monotone runs, e.g. [DECREASING, INCREASING] for a valley."""
    runs: list[Monotonicity] = []
    for diff in np.diff(np.asarray(values, dtype=float)):
        if diff == 0:
            continue
        step = Monotonicity.INCREASING if diff > 0 else Monotonicity.DECREASING
        if not runs or runs[-1] is not step:
            runs.append(step)
    return runs


class ScanRow(NamedTuple):
    d: float
    q1: float
    q2: float
    q_total: float


class ScanError(BisphereError):
    """A row of a scan failed; ``d`` is the offending gap."""

    def __init__(self, d: float, cause: Exception):
        super().__init__(f"heat loss failed at d={d!r}: {cause}")
        self.d = d
        self.cause = cause


@dataclass
class ScanResult:
    rows: list[ScanRow]
    minimum: Optional[tuple[float, float]]
    monotone_flags: dict[str, Monotonicity] = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(row, name) for row in self.rows])


def scan_grid(d_min: float, d_max: float, steps: int, log_spacing: bool = False) -> np.ndarray:
    if not (0.0 <= d_min < d_max and math.isfinite(d_max)):
        raise DomainError(f"need 0 <= d_min < d_max, got {d_min!r}, {d_max!r}")
    if steps < 2:
        raise DomainError(f"steps must be at least 2, got {steps!r}")
    if log_spacing:
        if d_min <= 0.0:
            raise DomainError("logarithmic spacing needs d_min > 0")
        grid = np.geomspace(d_min, d_max, steps)
    else:
        grid = np.linspace(d_min, d_max, steps)
    grid[0], grid[-1] = d_min, d_max
    return grid


def scan(p: SphereParams, d_min: float, d_max: float, steps: int, log_spacing: bool = False,
         opts: SeriesOptions = SeriesOptions()) -> ScanResult:
    """Evaluate Q1, Q2, Q on a grid of gaps; the gap stored in ``p`` is ignored."""
    rows = []
    for d in scan_grid(d_min, d_max, steps, log_spacing):
        d = float(d)
        try:
            res = heat_loss(p.with_gap(d), opts)
        except BisphereError as exc:
            raise ScanError(d, exc) from exc
        rows.append(ScanRow(d, res.q1, res.q2, res.q_total))
    result = ScanResult(rows, None)
    q1 = result.column("q1")
    i = int(np.argmin(q1))
    result.minimum = (rows[i].d, rows[i].q1)
    result.monotone_flags = {
        name: monotonicity(result.column(name)) for name in ("q1", "q2", "q_total")
    }
    return result
