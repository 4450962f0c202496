"""
Disperser sampling, degree trimming and exhaustive disperser verification.

A (k, eps)-disperser is a bipartite graph in which every set X of at least k
left vertices has |Γ(X)| >= (1 - eps) * n_right.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from src.codeprops.models import Verdict
from src.common.errors import BudgetExceeded, DomainError
from src.common.logger import log_verification_failure, setup_logger
from src.common.trials import TrialOutcome, TrialRun, first_verified_trial, trial_rng
from src.common.utils import stopwatch

from config.settings import workbench_config

from .graph import BipartiteGraph

logger = setup_logger(__name__)


@dataclass(frozen=True)
class DisperserParams:
    """
    Target (n, m, k, eps).

    k >= 1 is accepted so that desk-scale amplifiers with ceil(n/8) = 1 can reuse
    the same sampler; the degree formula is unchanged.
    """
    n: int
    m: int
    k: int
    eps: float

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise DomainError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.m < 1:
            raise DomainError(f"need m >= 1, got {self.m}")
        if not 0 < self.eps < 1:
            raise DomainError(f"eps must lie in (0, 1), got {self.eps}")


def rt00_degree(p: DisperserParams) -> int:
    """D = ceil((1/eps)(ln(n/k) + 1) + (m/k)(ln(1/eps) + 1))."""
    if not 0 < p.eps < 1:
        raise DomainError(f"eps must lie in (0, 1), got {p.eps}")
    value = (math.log(p.n / p.k) + 1) / p.eps + (p.m / p.k) * (math.log(1 / p.eps) + 1)
    return math.ceil(value)


def sample_left_regular(n: int, m: int, degree: int,
                        seed: Union[int, np.random.Generator, None]) -> BipartiteGraph:
    """Each left vertex draws ``degree`` neighbors uniformly with replacement; repeats collapse."""
    if degree < 1:
        raise DomainError(f"degree must be positive, got {degree}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    draws = rng.integers(0, m, size=(n, degree))
    return BipartiteGraph(n, m, tuple(tuple(int(v) for v in np.unique(row)) for row in draws))


def trim_top_degrees(g: BipartiteGraph, t: int) -> BipartiteGraph:
    """
    Remove the t right vertices of largest degree (lowest index first among ties).

    Surviving right vertices are renumbered in their original order.
    """
    if not 0 <= t < max(g.n_right, 1):
        raise DomainError(f"cannot trim {t} of {g.n_right} right vertices")
    if t == 0:
        return g
    degrees = g.right_degrees()
    # stable sort on -degree keeps lower indices first within a degree class
    order = np.argsort(-degrees, kind='stable')
    removed = set(int(v) for v in order[:t])
    relabel = {}
    for v in range(g.n_right):
        if v not in removed:
            relabel[v] = len(relabel)
    adjacency = tuple(tuple(relabel[v] for v in row if v in relabel) for row in g.adjacency)
    return BipartiteGraph(g.n_left, g.n_right - t, adjacency)


def _gamma_threshold(m: int, eps: float) -> int:
    """Least integer size satisfying |Γ| >= (1 - eps) m."""
    return max(0, math.ceil((1 - eps) * m - 1e-12))


def first_small_gamma(masks: List[int], k: int, threshold: int) -> Tuple[Optional[Tuple[int, ...]], int]:
    """
    Lexicographic search for a k-subset whose neighborhood union has fewer than ``threshold`` vertices.

    Prefixes whose union already meets the threshold are skipped whole; their
    subsets are still counted in the returned total.
    """
    n = len(masks)
    chosen: List[int] = []
    counted = 0

    def visit(start: int, union: int) -> Optional[Tuple[int, ...]]:
        nonlocal counted
        need = k - len(chosen)
        if need == 0:
            counted += 1
            return None if union.bit_count() >= threshold else tuple(chosen)
        for u in range(start, n - need + 1):
            extended = union | masks[u]
            if extended.bit_count() >= threshold:
                counted += math.comb(n - u - 1, need - 1)
                continue
            chosen.append(u)
            found = visit(u + 1, extended)
            chosen.pop()
            if found is not None:
                return found
        return None

    witness = visit(0, 0)
    return witness, counted


def is_disperser(g: BipartiteGraph, k: int, eps: float, budget: Optional[int] = None) -> Verdict:
    """
    Exhaustive check over all k-subsets of the left side (supersets follow by monotonicity).

    Raises:
        BudgetExceeded: C(n_left, k) exceeds the enumeration budget
    """
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    if not 0 <= eps < 1:
        raise DomainError(f"eps must lie in [0, 1), got {eps}")
    cap = workbench_config.enum_budget if budget is None else budget
    if k > g.n_left:
        return Verdict(ok=True, enumerated=0, detail={'vacuous': True})
    subsets = math.comb(g.n_left, k)
    if subsets > cap:
        raise BudgetExceeded('disperser subsets', subsets, cap)

    threshold = _gamma_threshold(g.n_right, eps)
    with stopwatch() as timing:
        witness, counted = first_small_gamma(list(g.neighbor_masks), k, threshold)
    if witness is None:
        return Verdict(ok=True, enumerated=counted, elapsed_ms=timing['elapsed_ms'],
                       detail={'threshold': threshold})
    gamma_size = g.gamma_mask(witness).bit_count()
    log_verification_failure(logger, 'disperser', {'X': witness, 'gamma': gamma_size, 'threshold': threshold},
                             level=logging.DEBUG)
    return Verdict(ok=False, counterexample=list(witness), enumerated=counted,
                   elapsed_ms=timing['elapsed_ms'], detail={'gamma': gamma_size, 'threshold': threshold})


def _disperser_trial(payload: Tuple[DisperserParams, int, int], seed: int, trial: int) -> TrialOutcome:
    params, degree, budget = payload
    graph = sample_left_regular(params.n, params.m, degree, trial_rng(seed, trial))
    verdict = is_disperser(graph, params.k, params.eps, budget)
    return TrialOutcome(ok=verdict.ok, value=graph, reason='' if verdict.ok else 'small neighborhood',
                        stats={'enumerated': verdict.enumerated})


def sample_verified_disperser(p: DisperserParams, seed: int, max_trials: Optional[int] = None,
                              jobs: Optional[int] = None,
                              budget: Optional[int] = None) -> Tuple[BipartiteGraph, TrialRun]:
    """
    Sample left-regular graphs at the RT00 degree until one verifies.

    Raises:
        TrialsExhausted: with failure statistics
    """
    degree = rt00_degree(p)
    trials = workbench_config.max_trials if max_trials is None else max_trials
    workers = workbench_config.jobs if jobs is None else jobs
    cap = workbench_config.enum_budget if budget is None else budget
    subsets = math.comb(p.n, p.k)
    if subsets > cap:
        raise BudgetExceeded('disperser subsets', subsets, cap)

    run = first_verified_trial(_disperser_trial, (p, degree, cap), seed, trials, workers,
                               what=f"disperser(n={p.n}, m={p.m}, k={p.k}, eps={p.eps})")
    logger.info(f"Disperser verified on trial {run.index} (degree {degree}, "
                f"{run.outcome.value.edge_count()} edges)")
    return run.outcome.value, run
