"""
Lower-bound arithmetic for densely regular graphs and the depth lower bound.

Only the closed forms are evaluated here; the distributions over input and
output subsets that define dense regularity are not represented.
"""

import math
from fractions import Fraction
from typing import Any, Dict, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, model_validator

from src.ack.inverse_ackermann import alpha, lambda_d, lambda_table
from src.codeprops.models import Verdict
from src.common.errors import DomainError
from src.common.logger import setup_logger
from src.common.utils import stopwatch

logger = setup_logger(__name__)

Real = Union[int, float, Fraction]
DEFAULT_OMEGA = Fraction(1, 54)
FSTAR_MAX_N = 10 ** 7


def _exact(value: Real) -> Fraction:
    return Fraction(str(value)) if isinstance(value, float) else Fraction(value)


class LowerBoundParams(BaseModel):
    """(n, d, r, eps, delta) with mu = 1/r; omega_const is the absolute constant of the Theta form."""
    model_config = ConfigDict(frozen=True)

    n: int
    d: int
    r: int
    eps: float
    delta: float
    omega_const: float = float(DEFAULT_OMEGA)

    @model_validator(mode='after')
    def _check(self) -> 'LowerBoundParams':
        if self.d < 1:
            raise ValueError(f"d must be at least 1, got {self.d}")
        if not 1 <= self.r <= self.n:
            raise ValueError(f"need 1 <= r <= n, got r={self.r}, n={self.n}")
        if self.eps <= 0 or self.delta <= 0 or not 0 < self.eps * self.delta <= 1:
            raise ValueError(f"need eps, delta > 0 with eps*delta in (0, 1], got {self.eps}, {self.delta}")
        if self.omega_const <= 0:
            raise ValueError(f"omega_const must be positive, got {self.omega_const}")
        return self

    @property
    def mu(self) -> Fraction:
        return Fraction(1, self.r)


def lb_depth1(n: int, r: int, eps: Real, delta: Real) -> Fraction:
    """eps * delta^2 * n * r, exactly."""
    if eps <= 0 or delta <= 0:
        raise DomainError(f"eps and delta must be positive, got {eps}, {delta}")
    if n < 1 or r < 1:
        raise DomainError(f"n and r must be positive, got {n}, {r}")
    return _exact(eps) * _exact(delta) ** 2 * n * r


def lb_refined(p: LowerBoundParams) -> Fraction:
    """
    Explicit form min{1/27, delta/2} * 2^{-k} * eps * delta * n * lambda_d(r).

    Odd d = 2k + 1 uses it as stated; even d = 2k uses lambda_{2k}(r) with an
    extra factor 1/2.
    """
    eps, delta = _exact(p.eps), _exact(p.delta)
    prefactor = min(Fraction(1, 27), delta / 2)
    k, odd = divmod(p.d, 2)
    value = prefactor * Fraction(1, 2 ** k) * eps * delta * p.n * lambda_d(p.d, p.r)
    return value if odd else value / 2


def lb_theorem_form(p: LowerBoundParams) -> float:
    """omega * 2^{-d/2} * eps * delta^2 * lambda_d(r) * n."""
    return p.omega_const * 2.0 ** (-p.d / 2) * p.eps * p.delta ** 2 * lambda_d(p.d, p.r) * p.n


def depth_lower_bound(n: int) -> int:
    """max(1, alpha(n) - 2)."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    return max(1, alpha(n) - 2)


def check_fstar_lemma(max_n: int) -> Verdict:
    """
    For f = floor(sqrt) and every n <= max_n, i <= f*(n)/2:
    f^{(i)}(n) >= f*(n), and the weaker f^{(i)}(n) >= f*(n)/2.
    """
    if not 1 <= max_n <= FSTAR_MAX_N:
        raise DomainError(f"max_n must lie in [1, {FSTAR_MAX_N}], got {max_n}")
    with stopwatch() as timing:
        roots = lambda_table(1, max_n)
        fstar = lambda_table(3, max_n)
        n_values = np.arange(max_n + 1, dtype=np.int64)
        iterate = n_values.copy()
        checked = 0
        for i in range(int(fstar.max()) // 2 + 1):
            admissible = (2 * i <= fstar) & (n_values >= 1)
            checked += int(admissible.sum())
            for form, floor in (('strong', fstar), ('weak', fstar / 2)):
                bad = np.nonzero(admissible & (iterate < floor))[0]
                if bad.size:
                    n = int(bad[0])
                    witness = {'n': n, 'i': i, 'iterate': int(iterate[n]), 'fstar': int(fstar[n]), 'form': form}
                    return Verdict(ok=False, counterexample=witness, enumerated=checked,
                                   elapsed_ms=timing['elapsed_ms'])
            iterate = roots[iterate]
    logger.info(f"f* lemma holds for all n <= {max_n} ({checked} (n, i) pairs)")
    return Verdict(ok=True, enumerated=checked, elapsed_ms=timing['elapsed_ms'],
                   detail={'max_n': max_n, 'max_fstar': int(fstar.max())})


def densely_regular_params(n: int, rho: Real, delta: Real) -> Dict[str, Any]:
    """
    Dummy-input conversion: N = floor(n/rho) inputs and outputs, rho' = n/N,
    graph (rho' delta, rho', 1/N)-densely regular.
    """
    rho, delta = _exact(rho), _exact(delta)
    if not 0 < rho < 1:
        raise DomainError(f"rho must lie in (0, 1), got {rho}")
    if not 0 < delta < Fraction(1, 2):
        raise DomainError(f"delta must lie in (0, 1/2), got {delta}")
    N = math.floor(n / rho)
    if N < 1:
        raise DomainError(f"n/rho must be at least 1, got n={n}, rho={rho}")
    rho_prime = Fraction(n, N)
    if not rho_prime > rho / 2:
        raise DomainError(f"rho' = {rho_prime} is not above rho/2")
    return {'N': N, 'rho_prime': rho_prime, 'eps': rho_prime * delta, 'delta': rho_prime, 'mu': Fraction(1, N)}


def edge_lower_bound_check(wires: int, eps: Real, delta: Real, n: int) -> Dict[str, Any]:
    """|E| >= 2 eps delta n for an accepted circuit."""
    floor = 2 * _exact(eps) * _exact(delta) * n
    return {'wires': wires, 'floor': floor, 'ok': wires >= floor}


def frontier_frame(ns) -> pd.DataFrame:
    """Depth frontier table: columns n, depth_lb, alpha."""
    return pd.DataFrame([{'n': int(n), 'depth_lb': depth_lower_bound(int(n)), 'alpha': alpha(int(n))} for n in ns],
                        columns=['n', 'depth_lb', 'alpha'])
