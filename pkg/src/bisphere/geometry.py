"""
Sphere parameters and their bispherical coordinates.

Both sphere surfaces are level sets mu = mu1 > 0 and mu = mu2 < 0 of the
bispherical chart whose foci sit at the sphere centres. Every series in
:mod:`bisphere.heatloss` is written in terms of x = exp(mu1), y = exp(-mu2),
z = x*y and alpha = log(x) / log(z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DegenerateConfigurationError, DomainError

# Below this gap (relative to the smaller radius) x - 1 ~ sqrt(d) has lost
# too many digits; contact formulas must be used instead.
MIN_RELATIVE_GAP = 1e-12


@dataclass(frozen=True)
class SphereParams:
    """Two radii, the gap between the sphere surfaces, and two surface temperatures."""

    r1: float
    r2: float
    d: float
    t1: float = 1.0
    t2: float = 1.0

    def __post_init__(self):
        for name in ("r1", "r2", "d", "t1", "t2"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
        if self.r1 <= 0 or self.r2 <= 0:
            raise DomainError(f"radii must be positive, got r1={self.r1!r}, r2={self.r2!r}")
        if self.d < 0:
            raise DomainError(f"gap d must be non-negative, got {self.d!r}")
        if self.t1 < 0 or self.t2 < 0:
            raise DomainError("temperatures must be non-negative")

    def swapped(self) -> "SphereParams":
        """The same configuration with the roles of the two spheres exchanged."""
        return SphereParams(self.r2, self.r1, self.d, self.t2, self.t1)

    def with_gap(self, d: float) -> "SphereParams":
        return replace(self, d=d)


def normalize(p: SphereParams) -> tuple[SphereParams, bool]:
    """Order the spheres so that r1 >= r2; ties keep the input order."""
    if p.r1 < p.r2:
        return p.swapped(), True
    return p, False


@dataclass(frozen=True)
class BisphericalConfig:
    """Focal scale, surface coordinates and the derived exponentials."""

    r1: float
    r2: float
    d: float
    a: float
    mu1: float
    mu2: float
    x: float
    y: float
    z: float
    alpha: float
    # x - 1, y - 1, z - 1 kept separately: they are O(sqrt(d)) near contact
    xm1: float
    ym1: float
    zm1: float

    @property
    def log_z(self) -> float:
        return self.mu1 - self.mu2


def _arccosh_1p(c_minus_1: float) -> float:
    """arccosh(1 + c) computed without forming 1 + c."""
    c_minus_1 = max(c_minus_1, 0.0)
    return math.log1p(c_minus_1 + math.sqrt(c_minus_1 * (c_minus_1 + 2.0)))


def to_bispherical(p: SphereParams) -> BisphericalConfig:
    """
    Bispherical coordinates of the two sphere surfaces.

    Raises
    ------
    DegenerateConfigurationError
        If the spheres touch (d = 0) or d / min(r1, r2) < 1e-12.
    """
    r1, r2, d = p.r1, p.r2, p.d
    if d == 0.0:
        raise DegenerateConfigurationError("spheres touch (d = 0); use the contact formulas")
    if d < MIN_RELATIVE_GAP * min(r1, r2):
        raise DegenerateConfigurationError(
            f"gap d={d!r} is below {MIN_RELATIVE_GAP} * min(r1, r2); use the contact formulas")

    big_d = d + r1 + r2
    root = math.sqrt((d + 2 * r1 + 2 * r2) * (d + 2 * r2) * (d + 2 * r1) * d)
    xm1 = (d * (d + 2 * r2) + root) / (2 * big_d * r1)
    ym1 = (d * (d + 2 * r1) + root) / (2 * big_d * r2)
    mu1 = math.log1p(xm1)
    mu2 = -math.log1p(ym1)

    # cosh(mu_j) - 1, i.e. ((d+r1+r2)^2 + r1^2 - r2^2) / (2 (d+r1+r2) r1) - 1 in factored form
    cosh1_m1 = d * (d + 2 * r2) / (2 * big_d * r1)
    cosh2_m1 = d * (d + 2 * r1) / (2 * big_d * r2)
    if cosh1_m1 <= 0 or cosh2_m1 <= 0:
        raise DomainError("cosh(mu) fell below 1; invalid sphere parameters")
    mu1_check = _arccosh_1p(cosh1_m1)
    mu2_check = -_arccosh_1p(cosh2_m1)
    # exp(mu) vs x, compared through the logarithms
    if abs(mu1_check - mu1) > 1e-10 * (1.0 + mu1) or abs(mu2_check - mu2) > 1e-10 * (1.0 - mu2):
        raise DomainError(f"inconsistent coordinates for {p!r}")

    x = 1.0 + xm1
    y = 1.0 + ym1
    zm1 = xm1 + ym1 + xm1 * ym1
    a = r1 * math.sinh(mu1)
    return BisphericalConfig(
        r1=r1, r2=r2, d=d, a=a, mu1=mu1, mu2=mu2,
        x=x, y=y, z=x * y, alpha=mu1 / (mu1 - mu2),
        xm1=xm1, ym1=ym1, zm1=zm1,
    )


def surface_element_scale(config: BisphericalConfig, eta: float, mu: float) -> float:
    """Area density a^2 sin(eta) / (cosh(mu) - cos(eta))^2 on the surface mu = const."""
    return config.a ** 2 * math.sin(eta) / (math.cosh(mu) - math.cos(eta)) ** 2
