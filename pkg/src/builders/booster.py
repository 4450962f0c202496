"""
Rate booster: a depth-1 random-coefficient layer over a trimmed disperser.

Inputs of weight at least delta*n are mapped to outputs of weight at least
gamma*floor(c*n). The guarantee is per input, so a sampled booster is
accepted against an explicit input set: the full band when that is
enumerable, or the images of the stage above it.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

from src.bipartite.disperser import DisperserParams, is_disperser, rt00_degree, sample_left_regular, trim_top_degrees
from src.circuit.linear_circuit import LinearCircuit
from src.codeprops.checkers import band_size
from src.codeprops.entropy import binary_entropy, failure_exponent
from src.codeprops.models import PgcParams
from src.common.errors import DomainError
from src.common.logger import setup_logger
from src.common.trials import TrialOutcome, trial_rng
from src.gf.field import GF2, PrimeField

from .base_builder import Acceptance, BaseBuilder, BuildResult, accept_layer, layer_from_graph
from .constants import ScaleProfile

logger = setup_logger(__name__)

EPS_START = 0.25
EPS_FLOOR = 2.0 ** -30


@dataclass(frozen=True)
class BoosterParams:
    """delta in (0, 32), c > 1, gamma in (0, 1/2) with h(gamma) < 1 - 1/c."""
    delta: float
    c: float
    gamma: float

    def __post_init__(self):
        if not 0 < self.delta < 32:
            raise DomainError(f"delta must lie in (0, 32), got {self.delta}")
        if not self.c > 1:
            raise DomainError(f"c must exceed 1, got {self.c}")
        if not 0 < self.gamma < 0.5:
            raise DomainError(f"gamma must lie in (0, 1/2), got {self.gamma}")
        if not binary_entropy(self.gamma) < 1 - 1 / self.c:
            raise DomainError(f"need h(gamma) < 1 - 1/c, got h({self.gamma}) = "
                              f"{binary_entropy(self.gamma):.6f} >= {1 - 1 / self.c:.6f}")


def select_booster_eps(c_prime: float, gamma: float) -> Tuple[float, float, float]:
    """
    Largest eps on the grid 1/4, 1/8, ... with c'(1-eps')(1-h(gamma/(1-eps'))) > 1,
    where eps' = (1 + 1/c') eps.

    Returns:
        (eps, eps', exponent)
    """
    eps = EPS_START
    while eps >= EPS_FLOOR:
        eps_prime = (1 + 1 / c_prime) * eps
        if eps_prime < 1:
            exponent = failure_exponent(c_prime, gamma, eps_prime)
            if exponent > 1:
                return eps, eps_prime, exponent
        eps /= 2
    raise DomainError(f"no admissible eps for c'={c_prime}, gamma={gamma}")


def fanin_bound(n_left: int, n_right: int, trimmed: int, degree: int) -> int:
    """
    Right-degree bound after trimming the ``trimmed`` largest: the next one is
    at most (edge count) / (trimmed + 1).
    """
    edges = n_left * min(degree, n_right)
    return min(n_left, edges // (trimmed + 1))


@dataclass(frozen=True)
class BoosterPlan:
    """Derived sizes of one booster instance."""
    n_in: int
    unit: int
    n_out: int
    k: int
    eps: float
    eps_prime: float
    exponent: float
    degree: int

    @property
    def n_right(self) -> int:
        return self.n_out + self.unit

    def fanin_bound(self) -> int:
        return fanin_bound(self.n_in, self.n_right, self.unit, self.degree)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n_in': self.n_in, 'unit': self.unit, 'n_out': self.n_out, 'k': self.k,
            'eps': self.eps, 'eps_prime': self.eps_prime, 'degree': self.degree,
            'failure_exponent': self.exponent,
            'failure_bound_log2': -self.exponent * self.unit,
            'fanin_bound': self.fanin_bound(),
        }


def plan_booster(p: BoosterParams, n_in: int, unit: int, n_out: Optional[int] = None) -> BoosterPlan:
    """
    Sizes for a booster on ``n_in`` inputs with base size ``unit``.

    Outputs default to floor(c * unit); the disperser has n_out + unit right
    vertices, of which the ``unit`` largest-degree ones are trimmed.
    """
    if unit < 1 or n_in < 1:
        raise DomainError(f"sizes must be positive, got n_in={n_in}, unit={unit}")
    outputs = math.floor(p.c * unit) if n_out is None else n_out
    if outputs < 1:
        raise DomainError(f"booster has no outputs at unit={unit}, c={p.c}")
    c_prime = outputs / unit
    if not binary_entropy(p.gamma) < 1 - 1 / c_prime:
        raise DomainError(f"unit={unit} too small: h(gamma) >= 1 - 1/c' with c'={c_prime}")
    eps, eps_prime, exponent = select_booster_eps(c_prime, p.gamma)
    k = min(n_in, max(1, math.ceil(p.delta * unit)))
    degree = rt00_degree(DisperserParams(n_in, outputs + unit, k, eps))
    return BoosterPlan(n_in, unit, outputs, k, eps, eps_prime, exponent, degree)


def sample_booster_layer(plan: BoosterPlan, field_: PrimeField, rng, budget: int) -> Tuple[Optional[LinearCircuit], str, int]:
    """
    One sampled booster layer.

    The disperser property is checked when enumerable; the returned reason is
    empty on success.
    """
    graph = sample_left_regular(plan.n_in, plan.n_right, plan.degree, rng)
    enumerated = 0
    if math.comb(plan.n_in, plan.k) <= budget:
        verdict = is_disperser(graph, plan.k, plan.eps, budget)
        enumerated = verdict.enumerated
        if not verdict.ok:
            return None, 'disperser', enumerated
    trimmed = trim_top_degrees(graph, plan.unit)
    return layer_from_graph(trimmed, field_, rng), '', enumerated


def _booster_trial(payload: Tuple[BoosterPlan, PrimeField, Acceptance, int], seed: int, trial: int) -> TrialOutcome:
    plan, field_, acceptance, budget = payload
    rng = trial_rng(seed, trial)
    layer, reason, enumerated = sample_booster_layer(plan, field_, rng, budget)
    if layer is None:
        return TrialOutcome(ok=False, reason=reason, stats={'enumerated': enumerated})
    verdict = accept_layer(layer, acceptance, budget)
    return TrialOutcome(ok=verdict.ok, value=(layer, verdict), reason='' if verdict.ok else 'weight floor',
                        stats={'enumerated': enumerated + verdict.enumerated})


class RateBooster(BaseBuilder):
    """Sample-and-verify builder for one rate booster."""

    def __init__(self, params: BoosterParams, n_in: int, unit: int, seed: int,
                 n_out: Optional[int] = None, inputs: Optional[Sequence[int]] = None,
                 upstream: Optional[LinearCircuit] = None, target: Optional[PgcParams] = None,
                 **kwargs: Any):
        """
        Args:
            params: Booster parameters
            n_in: Number of inputs (32n in the literal statement)
            unit: Base size n
            seed: Master seed
            n_out: Output count (default floor(c * unit))
            inputs: Packed input words the booster must handle (acceptance mode ``inputs``)
            upstream: Circuit feeding the booster; with ``target`` the stack is verified
            target: PGC the stacked circuit must satisfy
        """
        super().__init__(seed, **kwargs)
        self.params = params
        self.plan = plan_booster(params, n_in, unit, n_out)
        self.inputs = tuple(inputs) if inputs is not None else None
        self.upstream = upstream
        self.target = target

    def acceptance(self) -> Acceptance:
        """Choose what the sampled layer is verified against."""
        plan = self.plan
        floor = self.params.gamma * plan.n_out
        if self.upstream is not None:
            if self.target is None:
                raise DomainError("an upstream circuit needs a target PGC")
            return Acceptance('composite', params=self.target, upstream=self.upstream)
        if self.inputs is not None:
            return Acceptance('inputs', words=self.inputs, threshold=floor)
        lo = max(1, math.ceil(self.params.delta * plan.unit))
        if band_size(plan.n_in, lo, plan.n_in) > self.budget:
            raise DomainError(f"booster band on {plan.n_in} inputs is not enumerable; supply inputs or upstream")
        band = PgcParams(n_in=plan.n_in, n_out=plan.n_out, r=float(lo), s=float(plan.n_in), w_min=floor)
        return Acceptance('band', params=band)

    def build(self) -> BuildResult:
        acceptance = self.acceptance()
        if self.field != GF2 and acceptance.mode == 'inputs':
            raise DomainError("input-set acceptance runs on packed GF(2) words")
        run = self.run_trials(_booster_trial, (self.plan, self.field, acceptance, self.budget),
                              what=f"rate booster {self.plan.n_in}->{self.plan.n_out}")
        layer, verdict = run.outcome.value
        report = self.base_report(layer, run, verdict,
                                  params={'delta': self.params.delta, 'c': self.params.c, 'gamma': self.params.gamma},
                                  plan=self.plan.to_dict(), acceptance=acceptance.mode)
        return BuildResult(layer, report)


def build_rate_booster(p: BoosterParams, n: int, seed: int, n_in: Optional[int] = None,
                       profile: Optional[ScaleProfile] = None, **kwargs: Any) -> BuildResult:
    """Booster from output_factor * n inputs (32n in the literal statement) to floor(c n) outputs."""
    builder = RateBooster(p, n_in if n_in is not None else (profile.output_factor if profile else 32) * n,
                          n, seed, profile=profile, **kwargs)
    return builder.build()
