"""
Property suite for the inverse-Ackermann hierarchy.

Each check returns a PropertyResult naming the property, how many instances
were checked and the first failing instance, if any.
"""

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import ceil, isqrt
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from src.common.errors import DomainError
from src.common.logger import log_verification_failure, setup_logger
from src.common.utils import stopwatch

from .inverse_ackermann import ackermann, alpha, lambda_d, lambda_table

logger = setup_logger(__name__)


@dataclass
class PropertyResult:
    """Outcome of one named property check."""
    name: str
    checked: int
    ok: bool
    failure: Optional[Dict[str, Any]] = None
    elapsed_ms: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _finite_ackermann_points(i_max: int, d_max: int) -> List[Tuple[int, int, int]]:
    points = []
    for i in range(1, i_max + 1):
        for d in range(1, d_max + 1):
            value = ackermann(i, d)
            if not value.is_huge:
                points.append((i, d, int(value)))
    return points


def check_ackermann_inverse(i_max: int = 3, d_max: int = 6) -> PropertyResult:
    """lambda_{2i}(A(i, d)) = d and lambda_{2i}(A(i, d) + 1) = d + 1 wherever A(i, d) is finite."""
    with stopwatch() as timing:
        checked = 0
        failure = None
        for i, d, value in _finite_ackermann_points(i_max, d_max):
            checked += 1
            at_value = lambda_d(2 * i, value)
            past_value = lambda_d(2 * i, value + 1)
            if at_value != d or past_value != d + 1:
                failure = {'i': i, 'd': d, 'A': value, 'at': at_value, 'past': past_value}
                break
    return _finish('ackermann_inverse', checked, failure, timing)


def ackermann_max_preimage_check(i: int, d: int) -> bool:
    """
    A(i, d) = max{n : lambda_{2i}(n) <= d} at one point, plus A(i, lambda_{2i}(d)) >= d.

    Points where A(i, d) saturates only check the second property.
    """
    if i < 1 or d < 1:
        raise DomainError(f"need i, d >= 1, got {i}, {d}")
    value = ackermann(i, d)
    if not value.is_huge:
        n = int(value)
        if lambda_d(2 * i, n) > d or lambda_d(2 * i, n + 1) <= d:
            return False
    inner = lambda_d(2 * i, d)
    if inner == 0:
        return d <= 1
    return ackermann(i, inner) >= d


def check_ackermann_preimage(i_max: int = 3, d_max: int = 64) -> PropertyResult:
    """Pointwise sweep of ackermann_max_preimage_check."""
    with stopwatch() as timing:
        checked = 0
        failure = None
        for i in range(1, i_max + 1):
            for d in range(1, d_max + 1):
                checked += 1
                if not ackermann_max_preimage_check(i, d):
                    failure = {'i': i, 'd': d}
                    break
            if failure:
                break
    return _finish('ackermann_max_preimage', checked, failure, timing)


def check_lambda_sandwich(i_lo: int = 2, i_hi: int = 4, n_max: int = 10 ** 6) -> PropertyResult:
    """lambda_{2i+1}(n) <= lambda_{2i}(n) <= 2 lambda_{2i+1}(n) for n in [4, n_max]."""
    with stopwatch() as timing:
        checked = 0
        failure = None
        for i in range(i_lo, i_hi + 1):
            even = lambda_table(2 * i, n_max)[4:]
            odd = lambda_table(2 * i + 1, n_max)[4:]
            bad = np.nonzero((odd > even) | (even > 2 * odd))[0]
            checked += even.size
            if bad.size:
                n = int(bad[0]) + 4
                failure = {'i': i, 'n': n, 'even': int(even[bad[0]]), 'odd': int(odd[bad[0]])}
                break
    return _finish('lambda_sandwich', checked, failure, timing)


def check_lambda_below_n(d_max: int = 12, n_max: int = 10 ** 6) -> PropertyResult:
    """lambda_d(n) <= n - 2 for d <= d_max and n in [4, n_max]."""
    with stopwatch() as timing:
        checked = 0
        failure = None
        bound = np.arange(n_max + 1, dtype=np.int64) - 2
        for d in range(1, d_max + 1):
            values = lambda_table(d, n_max)
            bad = np.nonzero(values[4:] > bound[4:])[0]
            checked += n_max - 3
            if bad.size:
                n = int(bad[0]) + 4
                failure = {'d': d, 'n': n, 'value': int(values[n])}
                break
    return _finish('lambda_below_n_minus_2', checked, failure, timing)


def check_lambda_self(d_max: int = 40) -> PropertyResult:
    """lambda_d(d) <= 4 for d in [1, d_max]."""
    with stopwatch() as timing:
        failure = None
        for d in range(1, d_max + 1):
            value = lambda_d(d, d)
            if value > 4:
                failure = {'d': d, 'value': value}
                break
    return _finish('lambda_self_at_most_4', d_max, failure, timing)


def check_sqrt_half_bound(n_max: int = 10 ** 6, i_max: int = 12) -> PropertyResult:
    """lambda_i(n) <= floor(sqrt(n / 2)) for i in [2, i_max] and n in [2^7, n_max]."""
    with stopwatch() as timing:
        checked = 0
        failure = None
        lo = 1 << 7
        if n_max >= lo:
            bound = _isqrt_half(n_max)
            for i in range(2, i_max + 1):
                values = lambda_table(i, n_max)
                bad = np.nonzero(values[lo:] > bound[lo:])[0]
                checked += n_max - lo + 1
                if bad.size:
                    n = int(bad[0]) + lo
                    failure = {'i': i, 'n': n, 'value': int(values[n])}
                    break
    return _finish('lambda_sqrt_half_bound', checked, failure, timing)


def _isqrt_half(n_max: int) -> np.ndarray:
    halves = np.arange(n_max + 1, dtype=np.int64) // 2
    roots = np.floor(np.sqrt(halves.astype(np.float64))).astype(np.int64)
    roots[roots * roots > halves] -= 1
    roots[(roots + 1) * (roots + 1) <= halves] += 1
    return roots


def ceil_scaled_power(c: Union[int, Fraction], d: int) -> int:
    """Exact ceil(c * d * 2^(d/2)) for rational c > 0."""
    c = Fraction(c)
    if c <= 0 or d < 1:
        raise DomainError(f"need c > 0 and d >= 1, got {c}, {d}")
    if d % 2 == 0:
        return ceil(c * d * 2 ** (d // 2))
    # c d 2^((d-1)/2) sqrt(2) = sqrt(v) with v rational
    v = 2 * (c * d * 2 ** ((d - 1) // 2)) ** 2
    k = isqrt(v.numerator // v.denominator)
    while k * k * v.denominator < v.numerator:
        k += 1
    return k


def lambda_dd_threshold(c: Union[int, Fraction] = 1, d_lo: int = 1,
                        d_hi: int = 40) -> Tuple[Optional[int], Dict[int, bool]]:
    """
    Least d0 in [d_lo, d_hi] with lambda_d(ceil(c d 2^(d/2))) <= d for every d in [d0, d_hi].

    Returns:
        (threshold or None when even d_hi fails, per-d outcomes)
    """
    outcomes = {d: lambda_d(d, ceil_scaled_power(c, d)) <= d for d in range(d_lo, d_hi + 1)}
    threshold = None
    for d in range(d_hi, d_lo - 1, -1):
        if not outcomes[d]:
            break
        threshold = d
    return threshold, outcomes


def check_lambda_dd(c: Union[int, Fraction] = 1, d_lo: int = 8, d_hi: int = 40) -> PropertyResult:
    """lambda_d(ceil(c d 2^(d/2))) <= d on [d_lo, d_hi]; the empirical threshold is reported."""
    with stopwatch() as timing:
        threshold, outcomes = lambda_dd_threshold(c, 1, d_hi)
        failing = [d for d in range(d_lo, d_hi + 1) if not outcomes[d]]
        failure = {'d': failing[0], 'threshold': threshold} if failing else None
    result = _finish('lambda_dd', d_hi - d_lo + 1, failure, timing)
    logger.info(f"lambda_dd threshold for c={c}: {threshold}")
    return result


def check_monotone(n_max: int = 4096, d_max: int = 8) -> PropertyResult:
    """lambda_d(.) and alpha(.) are nondecreasing in n."""
    with stopwatch() as timing:
        failure = None
        for d in range(1, d_max + 1):
            values = lambda_table(d, n_max)[1:]
            drops = np.nonzero(np.diff(values) < 0)[0]
            if drops.size:
                failure = {'d': d, 'n': int(drops[0]) + 1}
                break
        if failure is None:
            previous = alpha(1)
            for n in range(2, n_max + 1):
                current = alpha(n)
                if current < previous:
                    failure = {'alpha_at': n}
                    break
                previous = current
    return _finish('monotone', d_max * n_max + n_max, failure, timing)


def run_property_suite(n_max: int = 10 ** 6) -> List[PropertyResult]:
    """Run every inverse-Ackermann property at the given sweep width."""
    logger.info(f"Running inverse-Ackermann property suite up to n = {n_max}")
    results = [
        check_ackermann_inverse(),
        check_ackermann_preimage(),
        check_lambda_sandwich(n_max=n_max),
        check_lambda_below_n(n_max=n_max),
        check_lambda_self(),
        check_sqrt_half_bound(n_max=n_max),
        check_lambda_dd(),
        check_monotone(n_max=min(n_max, 4096)),
    ]
    passed = sum(1 for result in results if result.ok)
    logger.info(f"Property suite: {passed}/{len(results)} properties hold")
    return results


def _finish(name: str, checked: int, failure: Optional[Dict[str, Any]],
            timing: Dict[str, float]) -> PropertyResult:
    if failure is not None:
        log_verification_failure(logger, name, failure)
    return PropertyResult(name=name, checked=checked, ok=failure is None,
                          failure=failure, elapsed_ms=timing['elapsed_ms'])
