"""
Independent checks of the heat-loss series.

Nothing here calls the series in :mod:`bisphere.heatloss`. Q1 is rebuilt
from the Legendre mode amplitudes of the potential and integrated over the
sphere surface numerically; the collapsing identity is checked by adaptive
quadrature; the positivity of f''' behind the Euler-Maclaurin error bound is
checked from its explicit formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
from numpy.polynomial import legendre
from scipy import integrate

from .errors import ConvergenceError, DomainError, IllConditionedError
from .geometry import BisphericalConfig, SphereParams, to_bispherical

SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# Boundary-coefficient quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryCoefficients:
    """
    Mode amplitudes of T = sqrt(cosh mu - cos eta) sum [A_n e^{(n+1/2)mu} + B_n e^{-(n+1/2)mu}] P_n.

    Stored normalised as a_hat = A_n e^{(2n+1) mu1} and b_hat = B_n e^{-(2n+1) mu2},
    both O(1); the raw A_n, B_n underflow long before the series is truncated.
    """

    n_max: int
    a_hat: np.ndarray
    b_hat: np.ndarray
    mu1: float
    mu2: float
    t1: float
    t2: float

    @property
    def a_n(self) -> np.ndarray:
        return self.a_hat * np.exp(-(2 * np.arange(self.n_max + 1) + 1) * self.mu1)

    @property
    def b_n(self) -> np.ndarray:
        return self.b_hat * np.exp((2 * np.arange(self.n_max + 1) + 1) * self.mu2)

    def residuals(self) -> np.ndarray:
        """
        Residuals of both boundary equations divided by sqrt(2) max(T1, T2) e^{-(n+1/2)|mu_j|},
        shape (2, n_max + 1).
        """
        h = np.arange(self.n_max + 1) + 0.5
        scale = SQRT2 * max(self.t1, self.t2, 1e-300)
        # sphere 1: A e^{m1} + B e^{-m1} = sqrt2 T1 e^{-m1}, times e^{m1}
        r1 = self.a_hat + self.b_hat * np.exp(2 * h * self.mu2) - SQRT2 * self.t1
        # sphere 2: A e^{m2} + B e^{-m2} = sqrt2 T2 e^{m2}, times e^{-m2}
        r2 = self.a_hat * np.exp(-2 * h * self.mu1) + self.b_hat - SQRT2 * self.t2
        return np.abs(np.vstack([r1, r2])) / scale


def solve_boundary(config: BisphericalConfig, t1: float, t2: float, n_max: int) -> BoundaryCoefficients:
    """Solve A_n e^{(n+1/2)mu_j} + B_n e^{-(n+1/2)mu_j} = T_j sqrt(2) e^{-(n+1/2)|mu_j|}, j = 1, 2."""
    if n_max < 0:
        raise DomainError("n_max must be non-negative")
    mu1, mu2 = config.mu1, config.mu2
    h = np.arange(n_max + 1) + 0.5
    m1 = h * mu1
    m2 = h * mu2
    # Cramer's rule; the determinant e^{m1-m2} - e^{m2-m1} is factored as e^{m1-m2} det
    det = -np.expm1(-2.0 * (m1 - m2))
    if not np.all(det > 0):
        raise IllConditionedError("boundary determinant vanished; the spheres are too close")
    a_hat = SQRT2 * (t1 - t2 * np.exp(2.0 * m2)) / det
    b_hat = SQRT2 * (t2 - t1 * np.exp(-2.0 * m1)) / det
    return BoundaryCoefficients(n_max, a_hat, b_hat, mu1, mu2, t1, t2)


def n_max_for(config: BisphericalConfig, tol: float = 1e-16) -> int:
    """Smallest n with (n + 1/2) e^{-(n+1/2) mu1} / (1 - e^{-mu1})^2 < tol."""
    rho = config.mu1
    denom = (-math.expm1(-rho)) ** 2
    n = max(8, int(math.log(1.0 / (tol * denom)) / rho))
    while (n + 0.5) * math.exp(-(n + 0.5) * rho) / denom > tol:
        n = int(n * 1.1) + 1
    return n


def _mode_values(coeffs: BoundaryCoefficients):
    """A_n e^{m1} + B_n e^{-m1} and (n + 1/2)(A_n e^{m1} - B_n e^{-m1}) on mu = mu1."""
    h = np.arange(coeffs.n_max + 1) + 0.5
    m1 = h * coeffs.mu1
    a_part = coeffs.a_hat * np.exp(-m1)
    b_part = coeffs.b_hat * np.exp(2.0 * h * coeffs.mu2 - m1)
    return a_part + b_part, h * (a_part - b_part)


def surface_temperature(config: BisphericalConfig, coeffs: BoundaryCoefficients, eta) -> np.ndarray:
    """Potential on mu = mu1 rebuilt from the mode amplitudes."""
    u = np.cos(np.asarray(eta, dtype=float))
    plus, _ = _mode_values(coeffs)
    return np.sqrt(math.cosh(config.mu1) - u) * legendre.legval(u, plus)


def _flux_integral(config: BisphericalConfig, coeffs: BoundaryCoefficients, nodes: int) -> float:
    mu1, a = config.mu1, config.a
    sh = math.sinh(0.5 * mu1)
    c = math.cosh(mu1)
    # integrate in t = log(cosh mu1 - u): cosh mu1 - u spans [2 sinh^2(mu1/2), 2 cosh^2(mu1/2)]
    t_lo = math.log(2.0 * sh * sh)
    t_hi = math.log(2.0 * math.cosh(0.5 * mu1) ** 2)
    xg, wg = legendre.leggauss(nodes)
    t = 0.5 * (t_hi - t_lo) * xg + 0.5 * (t_hi + t_lo)
    w = np.exp(t)  # cosh mu1 - u
    u = np.clip(c - w, -1.0, 1.0)
    plus, minus = _mode_values(coeffs)
    s0 = legendre.legval(u, plus)
    s1 = legendre.legval(u, minus)
    # dT/dn = (cosh mu1 - u)/a dT/dmu on mu = mu1
    dtdn = math.sinh(mu1) / (2.0 * a) * np.sqrt(w) * s0 + w ** 1.5 / a * s1
    # dsigma = a^2 du dphi / (cosh mu1 - u)^2 and du = w dt
    integrand = 2.0 * math.pi * a * a * dtdn / w
    return 0.5 * (t_hi - t_lo) * float(np.dot(wg, integrand))


class QuadratureValue(NamedTuple):
    value: float
    err: float
    nodes: int


def q1_quadrature(config: BisphericalConfig, coeffs: BoundaryCoefficients,
                  quad_nodes: int = 64) -> QuadratureValue:
    """Flux through sphere 1 by Gauss-Legendre quadrature; err compares against doubled nodes."""
    if quad_nodes < 16:
        raise DomainError("quad_nodes must be at least 16")
    coarse = _flux_integral(config, coeffs, quad_nodes)
    fine = _flux_integral(config, coeffs, 2 * quad_nodes)
    return QuadratureValue(fine, abs(fine - coarse), 2 * quad_nodes)


def q1_oracle(p: SphereParams, tol: float = 1e-10, max_nodes: int = 8192) -> QuadratureValue:
    """Q1 by quadrature, doubling the node count until successive values agree to 0.1 * tol."""
    config = to_bispherical(p)
    coeffs = solve_boundary(config, p.t1, p.t2, n_max_for(config))
    nodes = 32
    while True:
        result = q1_quadrature(config, coeffs, nodes)
        if result.err <= 0.1 * tol * abs(result.value):
            return result
        nodes *= 2
        if nodes > max_nodes:
            raise ConvergenceError(f"flux quadrature not converged with {max_nodes} nodes")


# ---------------------------------------------------------------------------
# Collapsing identity
# ---------------------------------------------------------------------------

def check_subtle_identity(A: float, B: float, quad_tol: float = 1e-12) -> tuple[float, float]:
    """
    sinh(B) int_{-1}^{1} (cosh A - x)^{-1/2} (cosh B - x)^{-3/2} dx against 2 / sinh((A + B)/2).

    Returns (lhs, rhs).
    """
    if A * B <= 0:
        raise DomainError("A and B must be non-zero and of the same sign")
    if min(abs(A), abs(B)) < 1e-4:
        raise ConvergenceError("integrand is nearly singular for min(|A|, |B|) < 1e-4")
    # cosh - 1 in cancellation-free form
    ca = 2.0 * math.sinh(0.5 * A) ** 2
    cb = 2.0 * math.sinh(0.5 * B) ** 2
    c_min = min(ca, cb)
    # x = 1 + c_min - e^t, so cosh(.) - x = (c - c_min) + e^t
    t_lo = math.log(c_min)
    t_hi = math.log(c_min + 2.0)

    def integrand(t: float) -> float:
        e = math.exp(t)
        return e * ((ca - c_min) + e) ** -0.5 * ((cb - c_min) + e) ** -1.5

    value, abserr = integrate.quad(integrand, t_lo, t_hi, epsabs=0.0, epsrel=quad_tol, limit=200)
    if abserr > 1e3 * quad_tol * abs(value):
        raise ConvergenceError(f"identity quadrature did not converge (A={A}, B={B})")
    lhs = math.sinh(B) * value
    rhs = 2.0 / math.sinh(0.5 * (A + B))
    return lhs, rhs


# ---------------------------------------------------------------------------
# Third derivative of (e^{ps} - 1) / (e^s - 1)
# ---------------------------------------------------------------------------

def lemma_coefficient(p: float, k: int) -> Fraction:
    """Exact coefficient a_k of s^k/k! in the numerator of f'''(s)."""
    q = Fraction(p)
    return ((q + 3) ** k * (q - 1) ** 3
            + (q + 2) ** k * (-3 * q ** 3 + 6 * q ** 2 - 4)
            + (q + 1) ** k * (3 * q ** 3 - 3 * q ** 2 - 3 * q - 1)
            - q ** (k + 3) + 3 ** k + 4 * 2 ** k + 1)


def lemma_a4(p: float) -> float:
    return 6.0 * p * p * (p - 1.0) ** 2


def lemma_a5(p: float) -> float:
    return 4.0 * p * (p - 1.0) * (6.0 * p * p * (p + 1.0) - 14.0 * p + 1.0)


_SERIES_CUTOFF = 0.5
_SERIES_TERMS = 60


def lemma_f3(p: float, s) -> np.ndarray:
    """
    f'''(s) for f(s) = (e^{ps} - 1)/(e^s - 1) from the explicit quotient

        [e^{s(p+3)}(p-1)^3 + e^{s(p+2)}(-3p^3+6p^2-4) + e^{s(p+1)}(3p^3-3p^2-3p-1)
         - p^3 e^{sp} + e^{3s} + 4e^{2s} + e^s] / (e^s - 1)^4.

    For s < 0.5 the numerator is summed as sum_k a_k s^k / k! (a_0..a_3 vanish),
    which avoids the cancellation of its O(1) pieces.
    """
    s = np.atleast_1d(np.asarray(s, dtype=float))
    out = np.empty_like(s)
    small = s < _SERIES_CUTOFF
    if np.any(small):
        ss = s[small]
        num = np.zeros_like(ss)
        for k in range(4, _SERIES_TERMS):
            num += float(lemma_coefficient(p, k) / math.factorial(k)) * ss ** k
        out[small] = num / np.expm1(ss) ** 4
    big = ~small
    if np.any(big):
        sb = s[big]
        # numerator and denominator both divided by e^{4s}
        num = (np.exp(sb * (p - 1)) * (p - 1) ** 3
               + np.exp(sb * (p - 2)) * (-3 * p ** 3 + 6 * p ** 2 - 4)
               + np.exp(sb * (p - 3)) * (3 * p ** 3 - 3 * p ** 2 - 3 * p - 1)
               - p ** 3 * np.exp(sb * (p - 4))
               + np.exp(-sb) + 4 * np.exp(-2 * sb) + np.exp(-3 * sb))
        out[big] = num / (-np.expm1(-sb)) ** 4
    return out


@dataclass
class LemmaReport:
    p: float
    min_f3: float
    violations: list[tuple[float, float]] = field(default_factory=list)
    negative_coefficients: list[int] = field(default_factory=list)
    a4_matches: bool = True
    a5_matches: bool = True

    @property
    def ok(self) -> bool:
        return (not self.violations and not self.negative_coefficients
                and self.a4_matches and self.a5_matches)


def lemma_f3_nonneg(p: float, s_grid: Sequence[float], k_max: int = 40,
                    floor: float = -1e-12) -> LemmaReport:
    """Check f'''(s) >= floor on ``s_grid`` and a_k >= 0 for k <= k_max."""
    if not -1.0 <= p <= 0.0:
        raise DomainError(f"p must lie in [-1, 0], got {p!r}")
    s_grid = np.asarray(s_grid, dtype=float)
    values = lemma_f3(p, s_grid)
    report = LemmaReport(p, float(values.min()))
    report.violations = [(p, float(s)) for s, v in zip(s_grid, values) if not v >= floor]
    report.negative_coefficients = [k for k in range(k_max + 1) if lemma_coefficient(p, k) < 0]
    a4 = float(lemma_coefficient(p, 4))
    a5 = float(lemma_coefficient(p, 5))
    report.a4_matches = abs(a4 - lemma_a4(p)) <= 1e-12 * max(1.0, abs(a4))
    report.a5_matches = abs(a5 - lemma_a5(p)) <= 1e-12 * max(1.0, abs(a5))
    return report


# ---------------------------------------------------------------------------
# Euler-Maclaurin remainder structure
# ---------------------------------------------------------------------------

def g3(config: BisphericalConfig, s) -> np.ndarray:
    """g'''(s) for g(s) = (x^{-2s-1} - 1)/(z^{2s+1} - 1), via g(s) = f((2s+1) log z)."""
    lz = config.log_z
    p = -config.mu1 / lz
    s = np.asarray(s, dtype=float)
    return (2.0 * lz) ** 3 * lemma_f3(p, (2.0 * s + 1.0) * lz)


def _g2_at_zero(config: BisphericalConfig) -> float:
    # second derivative of g at 0 by differentiating the quotient by hand
    lx, lz = config.mu1, config.log_z
    x, z, zm1 = config.x, config.z, config.zm1
    n0, n1, n2 = math.expm1(-lx), -2 * lx / x, 4 * lx * lx / x
    d0, d1, d2 = zm1, 2 * lz * z, 4 * lz * lz * z
    return (n2 * d0 * d0 - 2 * n1 * d1 * d0 - n0 * d2 * d0 + 2 * n0 * d1 * d1) / d0 ** 3


@dataclass
class EMRemainderReport:
    integral_abs_g3: float
    minus_g2_at_zero: float
    rel_diff: float
    g3_nonneg: bool
    g2_negative: bool
    g2_over_d: list[tuple[float, float]]
    bounded: bool

    @property
    def ok(self) -> bool:
        return self.rel_diff < 1e-8 and self.g3_nonneg and self.g2_negative and self.bounded


def check_em_remainder_sign(config: BisphericalConfig, g2_at_zero=None) -> EMRemainderReport:
    """
    Verify int_0^inf |g'''| = -g''(0) and g''(0) = O(d).

    ``g2_at_zero`` maps a config to g''(0); it defaults to this module's own
    closed form and can be pointed at the production implementation.
    """
    g2_at_zero = g2_at_zero or _g2_at_zero
    lz = config.log_z
    s_probe = np.concatenate([[0.0], np.geomspace(1e-4, 40.0 / lz, 200)])
    g3_nonneg = bool(np.all(g3(config, s_probe) >= -1e-12 * (2 * lz) ** 3))
    integral, _ = integrate.quad(lambda s: abs(float(g3(config, s)[0])), 0.0, np.inf,
                                 epsabs=0.0, epsrel=1e-12, limit=400)
    g2 = g2_at_zero(config)
    rel = abs(integral + g2) / abs(g2)

    ratios = []
    for scale in (1e-2, 1e-3, 1e-4):
        d = scale * config.r2
        cfg = to_bispherical(SphereParams(config.r1, config.r2, d))
        ratios.append((d, g2_at_zero(cfg) / d))
    values = [abs(r) for _, r in ratios]
    bounded = max(values) <= 4.0 * min(values)
    return EMRemainderReport(integral, -g2, rel, g3_nonneg, g2 < 0, ratios, bounded)
