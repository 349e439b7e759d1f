import math

import numpy as np
import pytest

from bisphere import (BracketError, DomainError, SeriesOptions, SphereParams, critical_ratio, heat_loss,
                      min_distance, q1_contact, q1_slope_at_contact, scan, slope_sign)
from bisphere.analysis import (Monotonicity, ScanError, SlopeSign, critical_equation, golden_section,
                               monotone_runs, monotonicity, scan_grid)
from reference_values import CRITICAL_RATIO, D_STAR_20_1


def test_critical_ratio_value():
    ell = critical_ratio(1e-6)
    assert 1.94 <= ell <= 1.96
    assert ell == pytest.approx(CRITICAL_RATIO, abs=1e-6)
    assert critical_ratio(1e-12) == pytest.approx(CRITICAL_RATIO, abs=1e-11)


def test_critical_ratio_refinement():
    assert critical_ratio(1e-4) == pytest.approx(critical_ratio(1e-10), abs=1e-4)
    assert critical_ratio(1e-3) == pytest.approx(critical_ratio(1e-10), abs=1e-3)
    with pytest.raises(DomainError):
        critical_ratio(0.5)


def test_critical_equation_at_one():
    assert critical_equation(1.0) == pytest.approx(2 - 8 * math.log(2.0), rel=1e-13)


def test_bracket_failure(monkeypatch):
    from bisphere import analysis
    monkeypatch.setattr(analysis, "critical_equation", lambda x: 1.0 + x)
    with pytest.raises(BracketError):
        analysis.critical_ratio()


def test_slope_flips_at_critical_ratio():
    ell = critical_ratio(1e-12)
    assert q1_slope_at_contact(ell + 0.01, 1.0) < 0
    assert q1_slope_at_contact(ell - 0.01, 1.0) > 0


def test_slope_sign_examples():
    assert slope_sign(20, 1) is SlopeSign.DECREASING_AT_CONTACT
    assert slope_sign(1, 1) is SlopeSign.INCREASING_AT_CONTACT
    ell = critical_ratio(1e-12)
    assert slope_sign(ell * 3.0, 3.0) is SlopeSign.CRITICAL
    with pytest.raises(DomainError):
        slope_sign(0, 1)


def test_slope_sign_against_finite_differences():
    ell = critical_ratio(1e-12)
    rng = np.random.default_rng(3)
    ratios = [r for r in rng.uniform(1.1, 50.0, 200) if abs(r - ell) > 0.05][:20]
    opts = SeriesOptions(tol=1e-14)
    for ratio in ratios:
        d = 1e-6
        fd = heat_loss(SphereParams(ratio, 1.0, d), opts).q1 - q1_contact(ratio, 1.0)
        expected = slope_sign(ratio, 1.0)
        assert (fd < 0) == (expected is SlopeSign.DECREASING_AT_CONTACT)


def test_golden_section():
    x, fx = golden_section(lambda t: (t - 0.3) ** 2, 0.0, 2.0, 1e-9)
    assert x == pytest.approx(0.3, abs=1e-8)
    assert fx < 1e-16


def test_min_distance_big_sphere():
    m = min_distance(20, 1)
    assert not m.boundary
    assert 10 <= m.d_star <= 40
    assert m.d_star == pytest.approx(D_STAR_20_1, abs=1e-4)
    assert m.q1_star < q1_contact(20, 1)
    assert m.q1_star < 4 * math.pi * 20


def test_min_distance_boundary():
    m = min_distance(1, 1)
    assert m.boundary and m.d_star == 0.0
    assert m.q1_star == q1_contact(1, 1)


def test_min_distance_scales():
    a = min_distance(5, 1, tol=1e-7)
    b = min_distance(50, 10, tol=1e-7)
    assert b.d_star == pytest.approx(10 * a.d_star, rel=1e-4)


def test_min_distance_on_fine_scan():
    m = min_distance(20, 1)
    res = scan(SphereParams(20, 1, 0), 0, 40, 401)
    cell = 40 / 400
    assert abs(res.minimum[0] - m.d_star) <= cell
    assert m.q1_star <= res.minimum[1] + 1e-12


def test_scan_big_small_pair():
    res = scan(SphereParams(20, 1, 0), 0, 80, 201)
    assert res.monotone_flags["q1"] is Monotonicity.NON_MONOTONE
    assert monotone_runs(res.column("q1")) == [Monotonicity.DECREASING, Monotonicity.INCREASING]
    assert res.monotone_flags["q2"] is Monotonicity.INCREASING
    assert res.monotone_flags["q_total"] is Monotonicity.INCREASING
    d_min, q_min = res.minimum
    assert 10 <= d_min <= 40
    assert q_min <= res.column("q1").min()
    assert np.all(np.diff(res.column("d")) > 0)


def test_scan_grid():
    g = scan_grid(1e-3, 10, 5, log_spacing=True)
    assert g[0] == 1e-3 and g[-1] == 10
    assert np.allclose(np.diff(np.log(g)), np.log(1e4) / 4)
    for bad in [(0, 1, 3, True), (1, 0.5, 3, False), (0, 1, 1, False), (-1, 1, 3, False)]:
        with pytest.raises(DomainError):
            scan_grid(*bad)


def test_scan_failure_names_gap():
    with pytest.raises(ScanError) as info:
        scan(SphereParams(2, 1, 0, 1, 2), 0, 1, 3)
    assert info.value.d == 0.0


def test_monotonicity_helpers():
    assert monotonicity([1, 2, 3]) is Monotonicity.INCREASING
    assert monotonicity([3, 2, 1]) is Monotonicity.DECREASING
    assert monotonicity([1, 1, 2]) is Monotonicity.NON_MONOTONE
    assert monotone_runs([3, 2, 2, 4, 5, 1]) == [Monotonicity.DECREASING, Monotonicity.INCREASING,
                                                 Monotonicity.DECREASING]
