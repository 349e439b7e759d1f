"""
Special functions needed by the heat-loss series.

Digamma and trigamma use upward recurrence followed by the Stirling-type
asymptotic expansion. The Gauss hypergeometric function is provided only in
the two regimes the series require: the direct power series for small
argument and the logarithmic expansion about v = 1 for c = a + b.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, DomainError

EULER_GAMMA = 0.57721566490153286060651209008240243

# Asymptotic expansions are accurate to ~1e-15 once the argument is >= 10.
_ASYMPTOTIC_START = 10.0

# B_{2k} / (2k) for k = 1..6
_DIGAMMA_COEFFS = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
)

# B_{2k} for k = 1..7
_TRIGAMMA_COEFFS = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)

# max |B_3(u)| on [0, 1], attained at u = (3 -+ sqrt(3)) / 6
BERNOULLI3_MAX = math.sqrt(3.0) / 36.0


def _positive_finite(t: float, name: str) -> float:
    t = float(t)
    if not math.isfinite(t):
        raise DomainError(f"{name} requires a finite argument, got {t!r}")
    if t <= 0.0:
        raise DomainError(f"{name} is only defined here for t > 0, got {t!r}")
    return t


def digamma(t: float) -> float:
    """Digamma function psi(t) = d/dt log Gamma(t) for t > 0."""
    t = _positive_finite(t, "digamma")
    if t < 1.0:
        # the pole term dominates; subtract it exactly so only the final rounding remains
        return float(Fraction(digamma(t + 1.0)) - 1 / Fraction(t))
    parts = []
    while t < _ASYMPTOTIC_START:
        parts.append(-1.0 / t)
        t += 1.0
    inv2 = 1.0 / (t * t)
    series = 0.0
    for c in reversed(_DIGAMMA_COEFFS):
        series = series * inv2 + c
    parts.append(-series * inv2)
    parts.append(-0.5 / t)
    parts.append(math.log(t))
    return math.fsum(parts)


def trigamma(t: float) -> float:
    """Trigamma function psi'(t) for t > 0."""
    t = _positive_finite(t, "trigamma")
    parts = []
    while t < _ASYMPTOTIC_START:
        parts.append(1.0 / (t * t))
        t += 1.0
    inv = 1.0 / t
    inv2 = inv * inv
    series = 0.0
    for c in reversed(_TRIGAMMA_COEFFS):
        series = series * inv2 + c
    parts.append(series * inv2 * inv)
    parts.append(0.5 * inv2)
    parts.append(inv)
    return math.fsum(parts)


def legendre_p(n: int, u: float) -> float:
    """Legendre polynomial P_n(u) on [-1, 1] by the three-term recurrence."""
    if n < 0 or int(n) != n:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    u = float(u)
    if not abs(u) <= 1.0:
        raise DomainError(f"legendre_p requires |u| <= 1, got {u!r}")
    p_prev, p = 1.0, u
    if n == 0:
        return p_prev
    for k in range(1, int(n)):
        p_prev, p = p, ((2 * k + 1) * u * p - k * p_prev) / (k + 1)
    return p


def legendre_table(n_max: int, u) -> np.ndarray:
    """
    All P_0..P_{n_max} evaluated at every point of ``u``.

    Returns an array of shape (n_max + 1, len(u)).
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if n_max < 0:
        raise DomainError("n_max must be non-negative")
    if np.any(np.abs(u) > 1.0):
        raise DomainError("legendre_table requires |u| <= 1")
    table = np.empty((n_max + 1, u.size))
    table[0] = 1.0
    if n_max >= 1:
        table[1] = u
    for k in range(1, n_max):
        table[k + 1] = ((2 * k + 1) * u * table[k] - k * table[k - 1]) / (k + 1)
    return table


def bernoulli_poly(k: int, u: float) -> float:
    """Bernoulli polynomial B_k(u) for k in {2, 3}."""
    if k == 2:
        return u * u - u + 1.0 / 6.0
    if k == 3:
        return u * u * u - 1.5 * u * u + 0.5 * u
    raise DomainError(f"only Bernoulli polynomials of order 2 and 3 are supported, got {k!r}")


def hyp2f1_direct(a: float, b: float, c: float, v: float, tol: float = 1e-16,
                  max_terms: int = 100_000) -> float:
    """Gauss series sum_n (a)_n (b)_n / (c)_n v^n / n! for |v| <= 0.95."""
    if c <= 0 and float(c).is_integer():
        raise DomainError(f"c must not be a non-positive integer, got {c!r}")
    if abs(v) > 0.95:
        raise ConvergenceError(
            f"direct 2F1 series is not used for |v| > 0.95 (v={v!r}); "
            "use hyp2f1_log_case")
    total = 1.0
    term = 1.0
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * v
        total += term
        if term == 0.0 or (abs(term) <= tol * abs(total) and n > abs(a * b / c)):
            return total
    raise ConvergenceError(f"direct 2F1 series did not converge in {max_terms} terms")


class LogCaseParts(NamedTuple):
    """2F1(a, b; a+b; v) = prefactor * (-log(1-v) * log_sum + regular_sum)."""
    prefactor: float
    log_sum: float
    regular_sum: float
    terms: int


def hyp2f1_log_case_parts(a: float, b: float, v: float, tol: float = 1e-16,
                          max_terms: int = 1_000_000,
                          one_minus_v: float | None = None) -> LogCaseParts:
    """
    Pieces of the expansion of 2F1(a, b; a+b; v) about v = 1.

    The logarithmic coefficient and the digamma part are returned
    separately so callers can cancel the log term analytically. Pass
    ``one_minus_v`` when 1 - v is known more accurately than v.
    """
    if not 0.0 < v < 1.0:
        raise DomainError(f"log-case 2F1 requires 0 < v < 1, got {v!r}")
    if a <= 0 or b <= 0:
        raise DomainError("log-case 2F1 requires a, b > 0")
    w = 1.0 - v if one_minus_v is None else one_minus_v
    prefactor = math.exp(math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b))
    psi_k1 = -EULER_GAMMA  # psi(k+1)
    psi_a = digamma(a)
    psi_b = digamma(b)
    coeff = 1.0
    log_sum = 0.0
    regular_sum = 0.0
    for k in range(max_terms):
        log_sum += coeff
        reg = coeff * (2.0 * psi_k1 - psi_a - psi_b)
        regular_sum += reg
        small = abs(coeff) <= tol * abs(log_sum) and abs(reg) <= tol * max(abs(regular_sum), abs(log_sum))
        if small and (a + k) * (b + k) * w < (k + 1) ** 2:
            return LogCaseParts(prefactor, log_sum, regular_sum, k + 1)
        coeff *= (a + k) * (b + k) / ((k + 1) ** 2) * w
        psi_k1 += 1.0 / (k + 1)
        psi_a += 1.0 / (a + k)
        psi_b += 1.0 / (b + k)
    raise ConvergenceError(f"log-case 2F1 did not converge in {max_terms} terms")


def hyp2f1_log_case(a: float, b: float, v: float, tol: float = 1e-16) -> float:
    """2F1(a, b; a+b; v) for 0 < v < 1 from its digamma-log expansion in (1 - v)."""
    parts = hyp2f1_log_case_parts(a, b, v, tol)
    return parts.prefactor * (-math.log1p(-v) * parts.log_sum + parts.regular_sum)


def hyp2f1(a: float, b: float, c: float, v: float) -> float:
    """Direct series for v <= 0.5, logarithmic expansion above (c = a + b only)."""
    if v <= 0.5:
        return hyp2f1_direct(a, b, c, v)
    if abs(c - (a + b)) > 1e-12 * max(1.0, abs(c)):
        raise DomainError("only the c = a + b case is supported for v > 0.5")
    return hyp2f1_log_case(a, b, v)
