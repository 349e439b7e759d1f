"""
Heat loss Q1, Q2 and Q = Q1 + Q2 of two isothermal spheres.

For d > 0 the flux through sphere 1 is

    Q1 = 4 pi T1 r1 + 4 pi r1 sinh(mu1) sum_{k>=1} [T1 / sinh(mu1 + k L) - T2 / sinh(k L)]

with L = mu1 - mu2 = log z. For equal temperatures Q1 = 4 pi T0 r1 (1 + f) where

    f = (x - 1/x) sum_{j>=0} (x^(-2j-1) - 1) / (z^(2j+1) - 1)

and near contact the sum over j is replaced by its Euler-Maclaurin form with
the integral term expressed through 2F1(1, 1+alpha; 2+alpha; 1/z). Q2 is
always obtained by exchanging the roles of the spheres.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import specfun
from .errors import ConvergenceError, DomainError, UnsupportedConfigurationError
from .geometry import BisphericalConfig, SphereParams, to_bispherical

EPS = float(np.finfo(float).eps)
FOUR_PI = 4.0 * math.pi

# Euler-Maclaurin is only attempted below this value of z - 1.
EM_SWITCH_ZM1 = 0.1


class Method(str, enum.Enum):
    DIRECT = "direct"
    EULER_MACLAURIN = "euler_maclaurin"
    AUTO = "auto"
    CONTACT = "contact"


@dataclass(frozen=True)
class SeriesOptions:
    tol: float = 1e-10
    max_terms: int = 10_000_000
    method: Method = Method.AUTO

    def __post_init__(self):
        if not 0.0 < self.tol <= 1e-2:
            raise DomainError(f"tol must lie in (0, 1e-2], got {self.tol!r}")
        if self.max_terms < 10:
            raise DomainError(f"max_terms must be at least 10, got {self.max_terms!r}")
        method = Method(self.method)
        if method is Method.CONTACT:
            raise DomainError("contact is selected automatically, not requested")
        object.__setattr__(self, "method", method)


class SeriesValue(NamedTuple):
    value: float
    err: float
    terms: int


@dataclass(frozen=True)
class HeatLossResult:
    q1: float
    q2: float
    q_total: float
    err_estimate: float
    method_used: str
    terms_used: int


# ---------------------------------------------------------------------------
# Direct series (any temperatures)
# ---------------------------------------------------------------------------

def _inv_sinh(t: np.ndarray) -> np.ndarray:
    # 1/sinh(t) = 2 e^{-t} / (1 - e^{-2t}), overflow-free for t > 0
    return -2.0 * np.exp(-t) / np.expm1(-2.0 * t)


def _direct_terms(cfg: BisphericalConfig, t1: float, t2: float, k: np.ndarray) -> np.ndarray:
    """T1/sinh(mu1 + kL) - T2/sinh(kL), arranged to avoid cancellation."""
    mu1, big_l = cfg.mu1, cfg.log_z
    a = mu1 + k * big_l
    b = k * big_l
    c = b + 0.5 * mu1
    # 1/sinh(a) - 1/sinh(b) = -2 cosh(c) sinh(mu1/2) / (sinh(a) sinh(b))
    diff = -4.0 * math.sinh(0.5 * mu1) * np.exp(-c) * (1.0 + np.exp(-2.0 * c)) / (
        np.expm1(-2.0 * a) * np.expm1(-2.0 * b))
    out = t1 * diff
    if t1 != t2:
        out = out + (t1 - t2) * _inv_sinh(b)
    return out


def _direct_tail_bound(cfg: BisphericalConfig, t_max: float, k_last: int) -> float:
    """Bound on sum_{k > k_last} |term_k|; each term is at most t_max / sinh(k L)."""
    big_l = cfg.log_z
    first = (k_last + 1) * big_l
    return 2.0 * t_max * math.exp(-first) / (-math.expm1(-big_l) * -math.expm1(-2.0 * first))


def q1_series_direct(p: SphereParams, opts: SeriesOptions = SeriesOptions()) -> SeriesValue:
    """Q1 from the sinh series; err is a rigorous truncation bound plus rounding."""
    cfg = to_bispherical(p)
    t1, t2 = p.t1, p.t2
    t_max = max(t1, t2)
    scale = FOUR_PI * p.r1 * math.sinh(cfg.mu1)
    base = FOUR_PI * t1 * p.r1
    big_l = cfg.log_z

    partial = []
    abs_total = 0.0
    k_done = 0
    k_next = 64
    while True:
        k = np.arange(k_done + 1, k_next + 1, dtype=float)
        terms = _direct_terms(cfg, t1, t2, k)
        partial.append(math.fsum(terms))
        abs_total += float(np.sum(np.abs(terms)))
        k_done = k_next
        total = math.fsum(partial)
        q1 = base + scale * total
        target = opts.tol * max(abs(q1), 1e-6 * FOUR_PI * p.r1 * t_max)
        tail = scale * _direct_tail_bound(cfg, t_max, k_done) if t_max > 0 else 0.0
        if tail <= target:
            break
        # e^{-(K+1)L} <= target (1 - e^{-L}) / (2 t_max scale), with 20% slack
        need = math.log(2.0 * t_max * scale / (target * -math.expm1(-big_l))) / big_l
        k_next = max(2 * k_done, int(math.ceil(1.2 * need)))
        if k_done >= opts.max_terms:
            raise ConvergenceError(
                f"direct series needs more than max_terms={opts.max_terms} terms "
                f"(z - 1 = {cfg.zm1:.3e}); use the Euler-Maclaurin method")
        k_next = min(k_next, opts.max_terms)
    rounding = 8.0 * EPS * (abs(base) + scale * abs_total)
    return SeriesValue(q1, tail + rounding, k_done)


# ---------------------------------------------------------------------------
# Equal temperatures: collapsed sum and its Euler-Maclaurin form
# ---------------------------------------------------------------------------

def f_collapsed(cfg: BisphericalConfig, opts: SeriesOptions = SeriesOptions()) -> SeriesValue:
    """f(d) = (x - 1/x) sum_j (x^(-2j-1) - 1) / (z^(2j+1) - 1), so Q1 = 4 pi T0 r1 (1 + f)."""
    lx, lz = cfg.mu1, cfg.log_z
    pref = 2.0 * math.sinh(lx)
    partial = []
    j_done = 0
    j_next = 64
    while True:
        m = 2.0 * np.arange(j_done, j_next, dtype=float) + 1.0
        # (x^-m - 1) / (z^m - 1) with only decaying exponentials
        terms = np.expm1(-m * lx) * np.exp(-m * lz) / -np.expm1(-m * lz)
        partial.append(math.fsum(terms))
        j_done = j_next
        total = math.fsum(partial)
        first = (2.0 * j_done + 1.0) * lz
        # every term is in (-1/(z^m - 1), 0)
        tail = pref * math.exp(-first) / (-math.expm1(-2.0 * lz) * -math.expm1(-first))
        target = opts.tol * abs(pref * total)
        if tail <= target:
            break
        need = 0.5 * (math.log(pref / (target * -math.expm1(-2.0 * lz))) / lz - 1.0)
        if j_done >= opts.max_terms:
            raise ConvergenceError(
                f"collapsed series needs more than max_terms={opts.max_terms} terms "
                f"(z - 1 = {cfg.zm1:.3e})")
        j_next = min(max(2 * j_done, int(math.ceil(1.2 * need))), opts.max_terms)
    value = pref * total
    return SeriesValue(value, tail + 4.0 * EPS * abs(value), j_done)


class GDerivatives(NamedTuple):
    g0: float
    g1: float
    g2: float


def g_derivatives_at_zero(cfg: BisphericalConfig) -> GDerivatives:
    """g(0), g'(0), g''(0) for g(s) = (x^(-2s-1) - 1) / (z^(2s+1) - 1), in closed form."""
    lx, lz = cfg.mu1, cfg.log_z
    inv_x = math.exp(-lx)
    num = math.expm1(-lx)
    num1 = -2.0 * lx * inv_x
    num2 = 4.0 * lx * lx * inv_x
    den = cfg.zm1
    den1 = 2.0 * lz * cfg.z
    den2 = 4.0 * lz * lz * cfg.z
    g0 = num / den
    g1 = (num1 - g0 * den1) / den
    g2 = (num2 - 2.0 * g1 * den1 - g0 * den2) / den
    return GDerivatives(g0, g1, g2)


def integral_of_g(cfg: BisphericalConfig) -> SeriesValue:
    """
    int_0^inf g(s) ds
      = -log(z/(z-1)) / (2 log z) + 2F1(1, 1+alpha; 2+alpha; 1/z) / ((1+alpha) 2 x z log z).

    For z < 2 the logarithmic expansion of 2F1 is used and its log(z/(z-1))
    part is combined with the first term before summation.
    """
    lz = cfg.log_z
    alpha = cfg.alpha
    z = cfg.z
    xz = math.exp(cfg.mu1 + lz)
    log_ratio = lz - math.log(cfg.zm1)  # log(z / (z - 1))
    if z >= 2.0:
        hyp = specfun.hyp2f1_direct(1.0, 1.0 + alpha, 2.0 + alpha, 1.0 / z)
        first = -log_ratio / (2.0 * lz)
        second = hyp / ((1.0 + alpha) * 2.0 * xz * lz)
        value = first + second
        return SeriesValue(value, 8.0 * EPS * (abs(first) + abs(second)), 0)
    parts = specfun.hyp2f1_log_case_parts(1.0, 1.0 + alpha, 1.0 / z, one_minus_v=cfg.zm1 / z)
    c = parts.prefactor / (1.0 + alpha)
    # log_sum equals x z analytically, so the log term is a rounding residue
    log_piece = log_ratio * (c * parts.log_sum - xz)
    value = (log_piece + c * parts.regular_sum) / (2.0 * xz * lz)
    rounding = 16.0 * EPS * (log_ratio * xz + abs(c * parts.regular_sum)) / (2.0 * xz * lz)
    return SeriesValue(value, rounding, parts.terms)


def f_euler_maclaurin(cfg: BisphericalConfig, opts: SeriesOptions = SeriesOptions()) -> SeriesValue:
    """
    f(d) from the Euler-Maclaurin form (x - 1/x) [int g + g(0)/2 - g'(0)/12].

    The dropped remainder is bounded by (x - 1/x) max|B3| / 6 * |g''(0)|,
    valid because g''' >= 0 on [0, inf).
    """
    pref = 2.0 * math.sinh(cfg.mu1)
    integral = integral_of_g(cfg)
    g0, g1, g2 = g_derivatives_at_zero(cfg)
    bracket = integral.value + 0.5 * g0 - g1 / 12.0
    value = pref * bracket
    remainder = pref * specfun.BERNOULLI3_MAX / 6.0 * abs(g2)
    rounding = pref * (integral.err + 8.0 * EPS * (abs(g0) + abs(g1))) + 4.0 * EPS * abs(value)
    return SeriesValue(value, remainder + rounding, integral.terms)


# ---------------------------------------------------------------------------
# Contact limit
# ---------------------------------------------------------------------------

def _validate_radii(r1: float, r2: float, t0: float) -> None:
    if not (r1 > 0 and r2 > 0 and math.isfinite(r1) and math.isfinite(r2)):
        raise DomainError(f"radii must be positive and finite, got r1={r1!r}, r2={r2!r}")
    if not (t0 >= 0 and math.isfinite(t0)):
        raise DomainError(f"temperature must be non-negative, got {t0!r}")


def contact_factor(r1: float, r2: float) -> float:
    """Q1(0) / (4 pi T0 r1) = -u (gamma + psi(u)) with u = r2 / (r1 + r2)."""
    u = r2 / (r1 + r2)
    if u < 0.5:
        # shifted form 1 - u (gamma + psi(1 + u)): no 1/u pole to cancel
        return 1.0 - u * (specfun.EULER_GAMMA + specfun.digamma(1.0 + u))
    return -u * (specfun.EULER_GAMMA + specfun.digamma(u))


def contact_factor_shifted(r1: float, r2: float) -> float:
    """The same quantity written as 1 - r2 (gamma + psi((2 r2 + r1)/(r1 + r2))) / (r1 + r2)."""
    return 1.0 - r2 * (specfun.EULER_GAMMA + specfun.digamma((2 * r2 + r1) / (r1 + r2))) / (r1 + r2)


def contact_factor_unshifted(r1: float, r2: float) -> float:
    return -r2 * (specfun.EULER_GAMMA + specfun.digamma(r2 / (r1 + r2))) / (r1 + r2)


def q1_contact(r1: float, r2: float, t0: float = 1.0) -> float:
    """Heat loss of sphere 1 when the spheres touch."""
    _validate_radii(r1, r2, t0)
    return FOUR_PI * t0 * r1 * contact_factor(r1, r2)


def contact_slope_bracket(r1: float, r2: float) -> float:
    """
    2 (r1^3 + r2^3)(gamma + psi(u)) + r1^2 r2 + r2^2 r1 + 2 (r1^2 r2 - r2^2 r1) psi'(u),
    u = r2 / (r1 + r2). Positive exactly when Q1 decreases at contact.
    """
    u = r2 / (r1 + r2)
    return (2.0 * (r1 ** 3 + r2 ** 3) * (specfun.EULER_GAMMA + specfun.digamma(u))
            + r1 * r1 * r2 + r2 * r2 * r1
            + 2.0 * (r1 * r1 * r2 - r2 * r2 * r1) * specfun.trigamma(u))


def q1_slope_at_contact(r1: float, r2: float, t0: float = 1.0) -> float:
    """dQ1/dd at d = 0+ for equal temperatures t0."""
    _validate_radii(r1, r2, t0)
    return -FOUR_PI * t0 * r1 * contact_slope_bracket(r1, r2) / (6.0 * r1 * (r1 + r2) ** 3)


# ---------------------------------------------------------------------------
# Dispatcher
# ---------------------------------------------------------------------------

def _q1_equal_temperature_em(p: SphereParams, cfg: BisphericalConfig,
                             opts: SeriesOptions) -> SeriesValue:
    f = f_euler_maclaurin(cfg, opts)
    scale = FOUR_PI * p.t1 * p.r1
    return SeriesValue(scale * (1.0 + f.value), scale * f.err + 4.0 * EPS * scale, f.terms)


def _q1(p: SphereParams, opts: SeriesOptions) -> tuple[SeriesValue, Method]:
    method = opts.method
    equal_t = p.t1 == p.t2
    if method is Method.EULER_MACLAURIN:
        if not equal_t:
            raise UnsupportedConfigurationError(
                "Euler-Maclaurin acceleration requires equal temperatures")
        return _q1_equal_temperature_em(p, to_bispherical(p), opts), Method.EULER_MACLAURIN
    if method is Method.DIRECT:
        return q1_series_direct(p, opts), Method.DIRECT
    cfg = to_bispherical(p)
    if equal_t and cfg.zm1 < EM_SWITCH_ZM1:
        em = _q1_equal_temperature_em(p, cfg, opts)
        if em.err <= opts.tol * abs(em.value):
            return em, Method.EULER_MACLAURIN
        try:
            return q1_series_direct(p, opts), Method.DIRECT
        except ConvergenceError:
            return em, Method.EULER_MACLAURIN
    return q1_series_direct(p, opts), Method.DIRECT


def heat_loss(p: SphereParams, opts: SeriesOptions = SeriesOptions()) -> HeatLossResult:
    """Q1, Q2 and their sum for the configuration ``p``."""
    if p.d == 0.0:
        if p.t1 != p.t2:
            raise UnsupportedConfigurationError(
                "no contact formula for unequal temperatures (d = 0, t1 != t2)")
        q1 = q1_contact(p.r1, p.r2, p.t1)
        q2 = q1_contact(p.r2, p.r1, p.t2)
        err = 8.0 * EPS * (abs(q1) + abs(q2))
        return HeatLossResult(q1, q2, q1 + q2, err, Method.CONTACT.value, 0)
    v1, m1 = _q1(p, opts)
    v2, m2 = _q1(p.swapped(), opts)
    method_used = m1.value if m1 is m2 else "mixed"
    return HeatLossResult(
        q1=v1.value,
        q2=v2.value,
        q_total=v1.value + v2.value,
        err_estimate=v1.err + v2.err,
        method_used=method_used,
        terms_used=v1.terms + v2.terms,
    )
