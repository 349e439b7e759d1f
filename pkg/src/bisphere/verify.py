"""Verification suites run by ``bisphere verify``."""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from . import oracle
from .geometry import SphereParams, to_bispherical
from .heatloss import (FOUR_PI, Method, SeriesOptions, f_collapsed, f_euler_maclaurin, heat_loss,
                       q1_contact, q1_series_direct)

SUITES = ("identity", "oracle", "lemma", "em")

IDENTITY_GRID = np.linspace(0.1, 4.0, 5)
LEMMA_P = (-1.0, -0.75, -0.5, -0.25, -0.05, 0.0)
LEMMA_S = np.geomspace(1e-3, 30.0, 50)
LEMMA_SAMPLE_P = tuple(np.linspace(-1.0, 0.0, 10))


class Check(NamedTuple):
    suite: str
    name: str
    passed: bool
    observed: float
    limit: float


def identity_checks() -> list[Check]:
    out = []
    for A in IDENTITY_GRID:
        for B in IDENTITY_GRID:
            lhs, rhs = oracle.check_subtle_identity(float(A), float(B))
            rel = abs(lhs - rhs) / abs(rhs)
            out.append(Check("identity", f"A={A:g} B={B:g}", rel < 1e-8, rel, 1e-8))
    return out


def random_oracle_configs(n: int = 20, seed: int = 20240601) -> list[SphereParams]:
    """Ratios in [1, 30], d/r2 in [0.1, 100]; every other configuration has unequal temperatures."""
    rng = np.random.default_rng(seed)
    configs = []
    for i in range(n):
        ratio = rng.uniform(1.0, 30.0)
        r2 = rng.uniform(0.5, 2.0)
        d = r2 * 10.0 ** rng.uniform(-1.0, 2.0)
        t1, t2 = (1.0, 1.0) if i % 2 == 0 else (rng.uniform(0.5, 2.0), rng.uniform(0.0, 2.0))
        configs.append(SphereParams(ratio * r2, r2, d, t1, t2))
    return configs


def oracle_checks(configs=None) -> list[Check]:
    out = []
    for p in configs or random_oracle_configs():
        series = heat_loss(p).q1
        quad = oracle.q1_oracle(p).value
        rel = abs(quad - series) / abs(series)
        name = f"r1={p.r1:.4g} r2={p.r2:.4g} d={p.d:.4g} t1={p.t1:.3g} t2={p.t2:.3g}"
        out.append(Check("oracle", name, rel < 1e-6, rel, 1e-6))
    return out


def lemma_checks() -> list[Check]:
    out = []
    for p in LEMMA_P:
        values = oracle.lemma_f3(p, LEMMA_S)
        for s, v in zip(LEMMA_S, values):
            out.append(Check("lemma", f"f3(p={p:g}, s={s:.4g})", bool(v >= -1e-12), float(v), -1e-12))
    for p in LEMMA_SAMPLE_P:
        report = oracle.lemma_f3_nonneg(float(p), LEMMA_S)
        a4 = float(oracle.lemma_coefficient(p, 4))
        a5 = float(oracle.lemma_coefficient(p, 5))
        out.append(Check("lemma", f"a4(p={p:.4g})", report.a4_matches, a4, oracle.lemma_a4(p)))
        out.append(Check("lemma", f"a5(p={p:.4g})", report.a5_matches, a5, oracle.lemma_a5(p)))
        worst = min(report.negative_coefficients, default=-1)
        out.append(Check("lemma", f"a_k >= 0, k <= 40 (p={p:.4g})",
                         not report.negative_coefficients, float(worst), 0.0))
    return out


EM_CONFIGS = (
    SphereParams(2.0, 1.0, 1e-4),
    SphereParams(1.0, 1.0, 1e-3),
    SphereParams(20.0, 1.0, 1e-3),
    SphereParams(1.0, 5.0, 1e-2),
    SphereParams(3.0, 1.0, 0.1),
)

REMAINDER_CONFIGS = (
    SphereParams(2.0, 1.0, 0.1),
    SphereParams(20.0, 1.0, 1.0),
    SphereParams(1.0, 1.0, 2.0),
)


def em_checks() -> list[Check]:
    out = []
    opts = SeriesOptions(tol=1e-13)
    for p in EM_CONFIGS:
        cfg = to_bispherical(p)
        em = f_euler_maclaurin(cfg)
        ref = f_collapsed(cfg, opts)
        diff = abs(em.value - ref.value)
        limit = em.err + ref.err
        out.append(Check("em", f"E-M vs collapsed r1={p.r1:g} r2={p.r2:g} d={p.d:g}",
                         diff <= limit, diff, limit))
    for p in REMAINDER_CONFIGS:
        report = oracle.check_em_remainder_sign(to_bispherical(p))
        out.append(Check("em", f"int|g'''| = -g''(0) r1={p.r1:g} r2={p.r2:g} d={p.d:g}",
                         report.ok, report.rel_diff, 1e-8))
    # the series just above contact must land on the closed-form contact value
    for r1, r2 in ((1.0, 1.0), (20.0, 1.0), (1.0, 4.0)):
        q0 = q1_contact(r1, r2)
        d = 1e-10 * r2
        q = heat_loss(SphereParams(r1, r2, d), SeriesOptions(method=Method.EULER_MACLAURIN)).q1
        rel = abs(q - q0) / q0
        out.append(Check("em", f"contact continuity r1={r1:g} r2={r2:g}", rel < 1e-8, rel, 1e-8))
    return out


def method_cross_check(p: SphereParams) -> tuple[float, float]:
    """|f_direct - f_em| and the sum of their error estimates, in units of 4 pi T0 r1."""
    cfg = to_bispherical(p)
    scale = FOUR_PI * p.t1 * p.r1
    direct = q1_series_direct(p)
    em = f_euler_maclaurin(cfg)
    f_direct = direct.value / scale - 1.0
    return abs(f_direct - em.value), direct.err / scale + em.err


SUITE_RUNNERS: dict[str, Callable[[], list[Check]]] = {
    "identity": identity_checks,
    "oracle": oracle_checks,
    "lemma": lemma_checks,
    "em": em_checks,
}


def run(suite: str = "all") -> list[Check]:
    names = SUITES if suite == "all" else (suite,)
    checks = []
    for name in names:
        try:
            checks.extend(SUITE_RUNNERS[name]())
        except Exception as exc:  # a crashing suite is a failing suite
            checks.append(Check(name, f"suite raised {type(exc).__name__}: {exc}", False,
                                math.nan, math.nan))
    return checks


def failing_suites(checks: list[Check]) -> list[str]:
    return sorted({c.suite for c in checks if not c.passed}, key=SUITES.index)


def format_table(checks: list[Check]) -> str:
    lines = [f"{'suite':<9} {'result':<6} {'observed':>12} {'limit':>12}  check"]
    for c in checks:
        lines.append(f"{c.suite:<9} {'pass' if c.passed else 'FAIL':<6} "
                     f"{c.observed:>12.4g} {c.limit:>12.4g}  {c.name}")
    passed = sum(c.passed for c in checks)
    lines.append(f"{passed}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"
