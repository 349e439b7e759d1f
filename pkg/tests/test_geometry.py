import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from bisphere import DegenerateConfigurationError, DomainError, SphereParams, normalize, to_bispherical
from bisphere.geometry import surface_element_scale


def test_params_validation():
    for bad in [(0, 1, 1), (1, -1, 1), (1, 1, -1), (1, 1, math.nan), (math.inf, 1, 1)]:
        with pytest.raises(DomainError):
            SphereParams(*bad)
    with pytest.raises(DomainError):
        SphereParams(1, 1, 1, t1=-1)


def test_normalize():
    p, swapped = normalize(SphereParams(1, 2, 1, 5, 7))
    assert swapped and p == SphereParams(2, 1, 1, 7, 5)
    q = SphereParams(2, 1, 1, 3, 4)
    assert normalize(q) == (q, False)
    tie = SphereParams(1, 1, 1, 3, 4)
    assert normalize(tie) == (tie, False)


def test_equal_radii_example():
    c = to_bispherical(SphereParams(1, 1, 2))
    assert c.mu1 == pytest.approx(math.acosh(2.0), rel=1e-14)
    assert c.mu2 == pytest.approx(-c.mu1, rel=1e-14)
    assert c.a == pytest.approx(math.sqrt(3.0), rel=1e-14)
    assert c.alpha == pytest.approx(0.5, rel=1e-14)


def test_centre_distance_identity():
    c = to_bispherical(SphereParams(2, 1, 1))
    assert 2 * math.cosh(c.mu1) + math.cosh(c.mu2) == pytest.approx(4.0, rel=1e-12)


def test_near_contact_leading_order():
    r1 = r2 = 1.0
    d = 1e-8
    c = to_bispherical(SphereParams(r1, r2, d))
    leading = 2.0 * math.sqrt(2.0 * r2 / ((r1 + r2) * r1)) * math.sqrt(d)
    assert c.x - 1.0 / c.x == pytest.approx(leading, rel=1e-4)


def test_contact_is_refused():
    with pytest.raises(DegenerateConfigurationError):
        to_bispherical(SphereParams(1, 1, 0))
    with pytest.raises(DegenerateConfigurationError):
        to_bispherical(SphereParams(1, 2, 5e-13))
    # just above the threshold is fine
    to_bispherical(SphereParams(1, 2, 2e-12))


def test_surface_element_examples():
    c = to_bispherical(SphereParams(2, 1, 1))
    assert surface_element_scale(c, 0.0, c.mu1) == 0.0
    assert surface_element_scale(c, math.pi / 2, c.mu1) == pytest.approx(c.a ** 2 / math.cosh(c.mu1) ** 2)


@pytest.mark.parametrize("r1, r2, d", [(2, 1, 1), (1, 1, 0.01), (20, 1, 10)])
def test_surface_element_gives_sphere_area(r1, r2, d):
    c = to_bispherical(SphereParams(r1, r2, d))
    area, _ = integrate.quad(lambda eta: surface_element_scale(c, eta, c.mu1), 0, math.pi,
                             epsabs=0, epsrel=1e-12, limit=200, points=[1e-3])
    assert 2 * math.pi * area == pytest.approx(4 * math.pi * r1 ** 2, rel=1e-8)


ratios = st.floats(1.0, 100.0)
gaps = st.floats(-6.0, 3.0).map(lambda e: 10.0 ** e)


@settings(max_examples=200)
@given(ratios, gaps)
def test_invariants(ratio, gap):
    r2 = 1.0
    r1 = ratio * r2
    d = gap * r2
    c = to_bispherical(SphereParams(r1, r2, d))
    assert c.mu1 > 0 > c.mu2
    assert c.x > 1 and c.y > 1 and c.z > 1
    assert 0 < c.alpha < 1
    assert r1 * math.sinh(c.mu1) == pytest.approx(c.a, rel=1e-12)
    assert r2 * math.sinh(-c.mu2) == pytest.approx(c.a, rel=1e-12)
    assert c.x == pytest.approx(math.exp(c.mu1), rel=1e-14)
    assert c.zm1 == pytest.approx(c.z - 1.0, rel=0, abs=1e-15 * c.z)
    # the gap rebuilt from cosh(mu_j) - 1 in cancellation-free form
    gap_back = r1 * 2 * math.sinh(c.mu1 / 2) ** 2 + r2 * 2 * math.sinh(c.mu2 / 2) ** 2
    assert gap_back == pytest.approx(d, rel=1e-10)


@settings(max_examples=50)
@given(ratios, gaps, st.floats(-3.0, 3.0).map(lambda e: 10.0 ** e))
def test_scale_invariance(ratio, gap, lam):
    c = to_bispherical(SphereParams(ratio, 1.0, gap))
    s = to_bispherical(SphereParams(lam * ratio, lam, lam * gap))
    for name in ("mu1", "mu2", "x", "y", "z", "alpha"):
        assert getattr(s, name) == pytest.approx(getattr(c, name), rel=1e-12)
    assert s.a == pytest.approx(lam * c.a, rel=1e-12)


@pytest.mark.parametrize("ratio", [1.0, 3.0, 50.0])
def test_monotone_in_gap(ratio):
    configs = [to_bispherical(SphereParams(ratio, 1.0, d)) for d in np.geomspace(1e-6, 1e3, 60)]
    for name in ("mu1", "x", "y", "z"):
        values = [getattr(c, name) for c in configs]
        assert all(b > a for a, b in zip(values, values[1:]))
    mags = [-c.mu2 for c in configs]
    assert all(b > a for a, b in zip(mags, mags[1:]))


@pytest.mark.parametrize("r1, r2", [(1, 1), (20, 1), (1, 7)])
def test_alpha_contact_limit(r1, r2):
    c = to_bispherical(SphereParams(r1, r2, 1e-10 * r2))
    assert c.alpha == pytest.approx(r2 / (r1 + r2), abs=1e-4)
