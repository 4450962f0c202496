"""
Amplifier: an (n, m, n/8, n, m/8)-range detector of depth 1 and size O(m).

Sampled on a disperser with 2m right vertices, k = ceil(n/8), eps = 1/20, after
which the m right vertices of largest degree are removed.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from src.bipartite.disperser import DisperserParams, is_disperser, rt00_degree, sample_left_regular, trim_top_degrees
from src.circuit.linear_circuit import LinearCircuit
from src.codeprops.checkers import band_size
from src.codeprops.entropy import amplifier_exponent
from src.codeprops.models import PgcParams, RangeDetectorParams
from src.common.errors import DomainError
from src.common.logger import setup_logger
from src.common.trials import TrialOutcome, trial_rng
from src.gf.field import PrimeField

from .base_builder import Acceptance, BaseBuilder, BuildResult, accept_layer, layer_from_graph
from .booster import fanin_bound

logger = setup_logger(__name__)

AMPLIFIER_EPS = 1 / 20
EXPANSION = Fraction(9, 10)


@dataclass(frozen=True)
class AmplifierPlan:
    n: int
    m: int
    k: int
    degree: int

    def detector_params(self) -> RangeDetectorParams:
        return RangeDetectorParams(m_in=self.n, n_out=self.m, ell=self.n / 8, k=self.n, r=self.m / 8)

    def fanin_bound(self) -> int:
        return fanin_bound(self.n, 2 * self.m, self.m, self.degree)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n, 'm': self.m, 'k': self.k, 'eps': AMPLIFIER_EPS, 'degree': self.degree,
            'fanin_bound': self.fanin_bound(),
            'failure_bound_log2': -amplifier_exponent() * self.m,
        }


def plan_amplifier(n: int, m: int) -> AmplifierPlan:
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if m < 3 * n:
        raise DomainError(f"amplifier needs m >= 3n, got n={n}, m={m}")
    k = math.ceil(n / 8)
    return AmplifierPlan(n, m, k, rt00_degree(DisperserParams(n, 2 * m, k, AMPLIFIER_EPS)))


def _amplifier_trial(payload: Tuple[AmplifierPlan, PrimeField, Acceptance, int], seed: int, trial: int) -> TrialOutcome:
    plan, field_, acceptance, budget = payload
    rng = trial_rng(seed, trial)
    graph = trim_top_degrees(sample_left_regular(plan.n, 2 * plan.m, plan.degree, rng), plan.m)
    enumerated = 0
    if math.comb(plan.n, plan.k) <= budget:
        # after trimming, every X with |X| >= n/8 must still see 9/10 of the outputs
        expansion = is_disperser(graph, plan.k, float(1 - EXPANSION), budget)
        enumerated = expansion.enumerated
        if not expansion.ok:
            return TrialOutcome(ok=False, reason='expansion', stats={'enumerated': enumerated})
    layer = layer_from_graph(graph, field_, rng)
    verdict = accept_layer(layer, acceptance, budget)
    return TrialOutcome(ok=verdict.ok, value=(layer, verdict), reason='' if verdict.ok else 'range',
                        stats={'enumerated': enumerated + verdict.enumerated})


class Amplifier(BaseBuilder):
    """Sample-and-verify builder for one amplifier."""

    def __init__(self, n: int, m: int, seed: int, upstream: Optional[LinearCircuit] = None,
                 target: Optional[PgcParams] = None, **kwargs: Any):
        """
        Args:
            n: Inputs
            m: Outputs, at least 3n
            seed: Master seed
            upstream: Circuit feeding the amplifier; with ``target`` the stack is verified instead
            target: PGC the stacked circuit must satisfy
        """
        super().__init__(seed, **kwargs)
        self.plan = plan_amplifier(n, m)
        self.upstream = upstream
        self.target = target

    def acceptance(self) -> Acceptance:
        if self.upstream is not None:
            if self.target is None:
                raise DomainError("an upstream circuit needs a target PGC")
            return Acceptance('composite', params=self.target, upstream=self.upstream)
        params = self.plan.detector_params()
        band = params.band()
        if band_size(self.plan.n, band.start, band.stop - 1) > self.budget:
            raise DomainError(f"amplifier band on {self.plan.n} inputs is not enumerable; supply upstream")
        return Acceptance('band', params=params)

    def build(self) -> BuildResult:
        acceptance = self.acceptance()
        run = self.run_trials(_amplifier_trial, (self.plan, self.field, acceptance, self.budget),
                              what=f"amplifier {self.plan.n}->{self.plan.m}")
        layer, verdict = run.outcome.value
        report = self.base_report(layer, run, verdict, plan=self.plan.to_dict(), acceptance=acceptance.mode)
        return BuildResult(layer, report)


def build_amplifier(n: int, m: int, seed: int, **kwargs: Any) -> BuildResult:
    """Verified (n, m, n/8, n, m/8)-range detector of depth 1."""
    return Amplifier(n, m, seed, **kwargs).build()
