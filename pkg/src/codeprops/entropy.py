"""
Binary entropy and Gilbert-Varshamov arithmetic.
"""

import math

from src.common.errors import DomainError


def binary_entropy(p: float) -> float:
    """h(p) = -p log2 p - (1-p) log2 (1-p), with h(0) = h(1) = 0."""
    if not 0 <= p <= 1:
        raise DomainError(f"entropy argument must lie in [0, 1], got {p}")
    if p == 0 or p == 1:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def gv_admissible(rate: float, delta: float) -> bool:
    """True iff rate < 1 - h(delta)."""
    if not 0 < rate < 1:
        raise DomainError(f"rate must lie in (0, 1), got {rate}")
    if not 0 < delta < 0.5:
        raise DomainError(f"delta must lie in (0, 1/2), got {delta}")
    return rate < 1 - binary_entropy(delta)


def gv_max_delta(rate: float, tolerance: float = 1e-15) -> float:
    """Largest delta in (0, 1/2) with h(delta) <= 1 - rate, by bisection."""
    if not 0 < rate < 1:
        raise DomainError(f"rate must lie in (0, 1), got {rate}")
    target = 1 - rate
    lo, hi = 0.0, 0.5
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        if binary_entropy(mid) <= target:
            lo = mid
        else:
            hi = mid
    return lo


def failure_exponent(c: float, gamma: float, eps_prime: float) -> float:
    """
    Per-input exponent e in the booster failure bound 2^{-e n}:
    e = c (1 - eps') (1 - h(gamma / (1 - eps'))).
    """
    if not 0 <= eps_prime < 1:
        raise DomainError(f"eps' must lie in [0, 1), got {eps_prime}")
    ratio = gamma / (1 - eps_prime)
    if ratio > 1:
        return float('-inf')
    return c * (1 - eps_prime) * (1 - binary_entropy(ratio))


def composition_exponent() -> float:
    """4 (1 - h(1/8)): the merge step's per-input failure exponent, above 1.8."""
    return 4 * (1 - binary_entropy(1 / 8))


def amplifier_exponent() -> float:
    """0.9 (1 - h(5/36)): the amplifier's per-output failure exponent, above 0.37."""
    return 0.9 * (1 - binary_entropy(5 / 36))
