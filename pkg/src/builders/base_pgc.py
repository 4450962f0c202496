"""
Budgeted random search for shallow partial good codes.

Base cases of depth 1 and 2 are found by search rather than built explicitly: a random
sparse skeleton with uniform coefficients, accepted only by check_pgc.
"""

import math
from typing import Any, Optional, Tuple

import numpy as np

from src.circuit.linear_circuit import CircuitSkeleton
from src.circuit.transforms import assign_random_coefficients
from src.codeprops.checkers import check_pgc
from src.codeprops.models import PgcParams
from src.common.errors import DomainError
from src.common.logger import setup_logger
from src.common.trials import TrialOutcome, trial_rng
from src.gf.field import PrimeField

from .base_builder import BaseBuilder, BuildResult

logger = setup_logger(__name__)


def default_fanin(n: int, r: float) -> int:
    """Inputs of weight >= r are hit by a gate of fanin about 2n/r; capped at n."""
    return min(n, max(2, math.ceil(2 * n / max(r, 1.0))))


def sample_skeleton(n: int, n_out: int, depth: int, fanin: int, rng: np.random.Generator) -> CircuitSkeleton:
    """Each gate draws ``fanin`` sources from the previous layer (repeats collapsed); middle layers have n gates."""
    widths = [n] + [n] * (depth - 1) + [n_out]
    layers = []
    for layer in range(1, depth + 1):
        draws = rng.integers(0, widths[layer - 1], size=(widths[layer], min(fanin, widths[layer - 1])))
        layers.append(tuple(tuple((layer - 1, int(v)) for v in np.unique(row)) for row in draws))
    return CircuitSkeleton(n, tuple(layers), tuple((depth, j) for j in range(n_out)))


def _base_pgc_trial(payload: Tuple[PgcParams, int, int, PrimeField, int, Optional[int]], seed: int,
                    trial: int) -> TrialOutcome:
    params, depth, fanin, field_, budget, wire_budget = payload
    rng = trial_rng(seed, trial)
    circuit = assign_random_coefficients(sample_skeleton(params.n_in, params.n_out, depth, fanin, rng), field_, rng)
    if wire_budget is not None and circuit.size() > wire_budget:
        return TrialOutcome(ok=False, reason='wire budget', stats={'wires': circuit.size()})
    verdict = check_pgc(circuit, params, budget)
    return TrialOutcome(ok=verdict.ok, value=(circuit, verdict), reason='' if verdict.ok else 'weight floor',
                        stats={'enumerated': verdict.enumerated})


class BasePgcSearch(BaseBuilder):
    """Search for a depth-1 or depth-2 PGC on a given band."""

    def __init__(self, n: int, r: float, s: float, depth: int, seed: int, fanin: Optional[int] = None,
                 wire_budget: Optional[int] = None, **kwargs: Any):
        super().__init__(seed, **kwargs)
        if depth not in (1, 2):
            raise DomainError(f"base PGCs have depth 1 or 2, got {depth}")
        self.params = self.profile.pgc_params(n, r, min(s, n))
        self.depth = depth
        self.fanin = default_fanin(n, r) if fanin is None else fanin
        self.wire_budget = wire_budget

    def build(self) -> BuildResult:
        payload = (self.params, self.depth, self.fanin, self.field, self.budget, self.wire_budget)
        run = self.run_trials(_base_pgc_trial, payload,
                              what=f"depth-{self.depth} PGC on band [{self.params.r}, {self.params.s}]")
        circuit, verdict = run.outcome.value
        report = self.base_report(circuit, run, verdict, band=[self.params.r, self.params.s],
                                  w_min=self.params.w_min, fanin=self.fanin, wire_budget=self.wire_budget)
        return BuildResult(circuit, report)


def search_base_pgc(n: int, r: float, s: float, depth: int, seed: int, **kwargs: Any) -> BuildResult:
    """Verified (n, r, s)-PGC of the requested depth at the active scale profile."""
    return BasePgcSearch(n, r, s, depth, seed, **kwargs).build()
