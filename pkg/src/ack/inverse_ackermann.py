"""
Ackermann function, the inverse-Ackermann hierarchy lambda_d and alpha(n).

lambda_1(n) = floor(sqrt(n)), lambda_2(n) = ceil(log2 n) and
lambda_d = f* of lambda_{d-2}, where f*(n) counts the iterations of f
needed to reach a value <= 1.
"""

from dataclasses import dataclass
from functools import lru_cache, total_ordering
from math import isqrt
from typing import Callable, Optional, Union

import numpy as np

from src.common.errors import DomainError, NonDecreasingStep
from src.common.logger import setup_logger

logger = setup_logger(__name__)

MAX_FINITE = 2 ** 63 - 1


@total_ordering
@dataclass(frozen=True, eq=False)
class SaturatingNat:
    """
    Natural number that saturates to HUGE above 2^63 - 1.

    ``value`` is None for the HUGE sentinel, which absorbs arithmetic and
    compares greater than every finite value.
    """
    value: Optional[int]

    @classmethod
    def of(cls, value: Union[int, 'SaturatingNat']) -> 'SaturatingNat':
        if isinstance(value, SaturatingNat):
            return value
        if value < 0:
            raise DomainError(f"SaturatingNat must be nonnegative, got {value}")
        return HUGE if value > MAX_FINITE else cls(int(value))

    @property
    def is_huge(self) -> bool:
        return self.value is None

    def _key(self) -> float:
        return float('inf') if self.value is None else self.value

    def __add__(self, other: Union[int, 'SaturatingNat']) -> 'SaturatingNat':
        other = SaturatingNat.of(other)
        if self.is_huge or other.is_huge:
            return HUGE
        return SaturatingNat.of(self.value + other.value)

    __radd__ = __add__

    def __mul__(self, other: Union[int, 'SaturatingNat']) -> 'SaturatingNat':
        other = SaturatingNat.of(other)
        if self.value == 0 or other.value == 0:
            return SaturatingNat(0)
        if self.is_huge or other.is_huge:
            return HUGE
        return SaturatingNat.of(self.value * other.value)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SaturatingNat):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __lt__(self, other: Union[int, 'SaturatingNat']) -> bool:
        if isinstance(other, (int, SaturatingNat)):
            return self._key() < SaturatingNat._as_key(other)
        return NotImplemented

    @staticmethod
    def _as_key(other: Union[int, 'SaturatingNat']) -> float:
        if isinstance(other, SaturatingNat):
            return other._key()
        return other

    def __hash__(self) -> int:
        return hash(self.value)

    def __int__(self) -> int:
        if self.value is None:
            raise OverflowError("HUGE has no finite value")
        return self.value

    def __repr__(self) -> str:
        return 'HUGE' if self.value is None else str(self.value)

    def to_json(self) -> Union[int, str]:
        return 'HUGE' if self.value is None else self.value


HUGE = SaturatingNat(None)


def f_star(f: Callable[[int], int], n: int) -> int:
    """
    Number of iterations of f needed to drive n down to at most 1.

    Raises:
        DomainError: n < 1
        NonDecreasingStep: some iterate m > 1 has f(m) >= m
    """
    if n < 1:
        raise DomainError(f"f* is defined for n >= 1, got {n}")
    count = 0
    m = n
    while m > 1:
        image = f(m)
        if image >= m:
            raise NonDecreasingStep(m, image)
        m = image
        count += 1
    return count


@lru_cache(maxsize=1 << 16)
def _lambda_cached(d: int, n: int) -> int:
    if d == 1:
        return isqrt(n)
    if d == 2:
        return (n - 1).bit_length()
    return f_star(lambda m: _lambda_cached(d - 2, m), n)


def lambda_d(d: int, n: int) -> int:
    """
    The inverse-Ackermann function lambda_d(n), logarithms base 2.

    Examples:
        lambda_d(2, 16) == 4, lambda_d(4, 16) == 3, lambda_d(6, 65536) == 3
    """
    if d < 1:
        raise DomainError(f"lambda index must be >= 1, got {d}")
    if n < 1:
        raise DomainError(f"lambda_d is defined for n >= 1, got {n}")
    return _lambda_cached(int(d), int(n))


@lru_cache(maxsize=4096)
def _ackermann_cached(i: int, j: int) -> SaturatingNat:
    if i == 0:
        return SaturatingNat.of(2 * j)
    if i == 1:
        return HUGE if j >= 63 else SaturatingNat.of(1 << j)
    # A(i, j) = A_{i-1} applied j - 1 times to A(i, 1) = 2
    value = SaturatingNat(2)
    for _ in range(j - 1):
        value = _ackermann_cached(i - 1, value.value)
        if value.is_huge:
            break
    return value


def ackermann(i: int, j: Union[int, SaturatingNat]) -> SaturatingNat:
    """
    A(0, j) = 2j, A(i, 1) = 2, A(i, j) = A(i - 1, A(i, j - 1)), saturating at HUGE.

    Raises:
        DomainError: i < 0 or j = 0
    """
    if i < 0:
        raise DomainError(f"Ackermann first argument must be >= 0, got {i}")
    if isinstance(j, SaturatingNat):
        if j.is_huge:
            return HUGE
        j = j.value
    if j < 1:
        raise DomainError(f"Ackermann second argument must be >= 1, got {j}")
    return _ackermann_cached(int(i), int(j))


def ackermann_iterate(i: int, times: int, seed: int) -> SaturatingNat:
    """A_i applied ``times`` times to ``seed``, saturating."""
    if seed < 1:
        raise DomainError(f"iteration seed must be >= 1, got {seed}")
    if times < 0:
        raise DomainError(f"iteration count must be >= 0, got {times}")
    value = SaturatingNat.of(seed)
    for _ in range(times):
        if value.is_huge:
            break
        value = ackermann(i, value)
    return value


def alpha(n: int) -> int:
    """Least even d with lambda_d(n) <= 6."""
    if n < 1:
        raise DomainError(f"alpha is defined for n >= 1, got {n}")
    d = 2
    while lambda_d(d, n) > 6:
        d += 2
    return d


def _isqrt_table(n_max: int) -> np.ndarray:
    values = np.arange(n_max + 1, dtype=np.int64)
    roots = np.floor(np.sqrt(values.astype(np.float64))).astype(np.int64)
    roots[roots * roots > values] -= 1
    roots[(roots + 1) * (roots + 1) <= values] += 1
    return roots


def _ceil_log2_table(n_max: int) -> np.ndarray:
    table = np.zeros(n_max + 1, dtype=np.int64)
    k = 1
    while (1 << (k - 1)) + 1 <= n_max:
        lo = (1 << (k - 1)) + 1
        hi = min(1 << k, n_max)
        table[lo:hi + 1] = k
        k += 1
    return table


def lambda_table(d: int, n_max: int) -> np.ndarray:
    """
    Vectorized lambda_d over 0..n_max (entry 0 is 0 and carries no meaning).

    Used by the property sweeps, which touch every n up to 10^6.
    """
    if d < 1:
        raise DomainError(f"lambda index must be >= 1, got {d}")
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")

    table = _isqrt_table(n_max) if d % 2 == 1 else _ceil_log2_table(n_max)
    for _ in range((d - 1) // 2):
        current = np.arange(n_max + 1, dtype=np.int64)
        counts = np.zeros(n_max + 1, dtype=np.int64)
        active = current > 1
        while active.any():
            counts[active] += 1
            current[active] = table[current[active]]
            active = current > 1
        table = counts
    return table
