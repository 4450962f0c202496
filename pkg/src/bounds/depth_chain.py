"""
Numerical replay of the depth lower-bound argument.

For a circuit family of size cn with rate rho and relative distance delta,
depth d is excluded when the densely-regular lower bound exceeds the cdn
wires of the layered graph. For every d that is not excluded the chain

    lambda_{d+2}(n) <= lambda_{d+2}(N) = lambda*_d(N) <= lambda*_d(lambda_d(N)) + 1
                    <= lambda*_d(M) + 1 <= lambda*_d(lambda_d(M)) + 2
                    <= lambda*_d(d) + 2 <= 6,       M = ceil(K d 2^{d/2}),

is instantiated with concrete numbers. The step lambda_d(M) <= d only holds
from the lambda_dd threshold of K upward; below it the chain is reported as
unlinked rather than closed.

With the default omega the arithmetic excludes fewer depths than the
asymptotic bound, so the least non-excluded depth is only required to stay at
or below depth_lower_bound(n); exact agreement is reported but holds only for
small n.
"""

import math
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from src.ack.inverse_ackermann import alpha, lambda_d
from src.ack.properties import ceil_scaled_power, lambda_dd_threshold
from src.common.errors import DomainError
from src.common.logger import setup_logger

from .lower_bounds import DEFAULT_OMEGA, LowerBoundParams, densely_regular_params, depth_lower_bound, lb_theorem_form

logger = setup_logger(__name__)

Real = Union[int, float, Fraction]
THRESHOLD_SEARCH_MAX = 60


def lambda_star(d: int, x: int) -> int:
    """lambda*_d(x) = lambda_{d+2}(x), with x clamped to at least 1."""
    return lambda_d(d + 2, max(1, x))


def _relation(name: str, lhs: int, rhs: int, applicable: bool = True) -> Dict[str, Any]:
    return {'name': name, 'lhs': lhs, 'rhs': rhs, 'applicable': applicable, 'holds': lhs <= rhs}


def chain_relations(n: int, d: int, N: int, K: Fraction, threshold: Optional[int]) -> List[Dict[str, Any]]:
    """The seven inequalities for one depth d."""
    lam_N = lambda_d(d, N)
    M = ceil_scaled_power(K, d)
    lam_M = lambda_d(d, M)
    above_threshold = threshold is not None and d >= threshold
    return [
        _relation('monotone in n', lambda_d(d + 2, n), lambda_d(d + 2, N)),
        _relation('definition of lambda_{d+2}', lambda_d(d + 2, N), lambda_star(d, N)),
        _relation('one iteration', lambda_star(d, N), lambda_star(d, lam_N) + 1),
        _relation('size bound', lam_N, M),
        _relation('one iteration at M', lambda_star(d, M) + 1, lambda_star(d, lam_M) + 2),
        _relation('lambda_d(M) <= d', lam_M, d, applicable=above_threshold),
        _relation('lambda*_d(d) + 2 <= 6', lambda_star(d, d) + 2, 6),
    ]


def depth_chain_certificate(n: int, rho: Real, delta: Real, c: Real, omega_const: Real = DEFAULT_OMEGA,
                            d_max: int = 16) -> Dict[str, Any]:
    """
    Replay the exclusion argument for d = 1 .. d_max.

    Args:
        n: Message length
        rho: Rate in (0, 1)
        delta: Relative distance in (0, 1/2)
        c: Size constant (circuits of at most cn wires)
        omega_const: Constant of the Theta form
        d_max: Largest depth examined

    Returns:
        Report with per-depth exclusion, the chain for every non-excluded depth,
        the least non-excluded depth and depth_lower_bound(n)
    """
    if n < 1 or c <= 0 or d_max < 1:
        raise DomainError(f"need n >= 1, c > 0 and d_max >= 1, got {n}, {c}, {d_max}")
    converted = densely_regular_params(n, rho, delta)
    N = converted['N']
    rho_prime = converted['rho_prime']
    omega = Fraction(str(omega_const)) if isinstance(omega_const, float) else Fraction(omega_const)
    c_exact = Fraction(str(c)) if isinstance(c, float) else Fraction(c)
    delta_exact = Fraction(str(delta)) if isinstance(delta, float) else Fraction(delta)
    K = c_exact / (omega * delta_exact * rho_prime ** 2)
    threshold, _ = lambda_dd_threshold(math.ceil(K), 1, THRESHOLD_SEARCH_MAX)

    depths = []
    least_not_excluded = None
    for d in range(1, d_max + 1):
        params = LowerBoundParams(n=N, d=d, r=N, eps=float(converted['eps']), delta=float(rho_prime),
                                  omega_const=float(omega))
        lower = lb_theorem_form(params)
        budget = float(c_exact) * d * n
        excluded = lower > budget
        entry: Dict[str, Any] = {'d': d, 'lower_bound': lower, 'wire_budget': budget, 'excluded': excluded}
        if not excluded:
            relations = chain_relations(n, d, N, K, threshold)
            entry['relations'] = relations
            entry['steps_hold'] = all(r['holds'] for r in relations if r['applicable'])
            entry['linked'] = all(r['applicable'] for r in relations)
            entry['chain_closed'] = entry['linked'] and entry['steps_hold']
            entry['alpha_at_most_d_plus_2'] = alpha(n) <= d + 2
            if least_not_excluded is None:
                least_not_excluded = d
        depths.append(entry)

    lower_depth = depth_lower_bound(n)
    open_depths = [entry for entry in depths if not entry['excluded']]
    consistent = least_not_excluded is not None and least_not_excluded <= lower_depth
    report = {
        'n': n, 'rho': str(rho), 'delta': str(delta), 'c': str(c), 'omega_const': str(omega),
        'N': N, 'rho_prime': str(rho_prime), 'K': str(K), 'lambda_dd_threshold': threshold,
        'depths': depths,
        'least_not_excluded': least_not_excluded,
        'depth_lower_bound': lower_depth,
        'agrees': least_not_excluded == lower_depth,
        'consistent': consistent,
        'closed_depths': [entry['d'] for entry in open_depths if entry['chain_closed']],
        'unlinked_depths': [entry['d'] for entry in open_depths if not entry['linked']],
        'sound': consistent and all(entry['steps_hold'] for entry in open_depths),
    }
    logger.debug(f"depth chain n={n}: least non-excluded depth {least_not_excluded}, "
                 f"depth lower bound {lower_depth}")
    return report
