"""
End-to-end good code at desk scale.

A chain of base PGCs covering [1, n] is composed into one PGC on the full
range, a rate booster maps it to floor(n / rate) outputs with weight floor
ceil(delta * N), and the booster's layer is collapsed. Every nonzero input
then encodes to weight at least ceil(delta * N), which is the minimum
distance checked at the end.
"""

import math
from typing import Any, Dict, List, Optional, Tuple

from src.circuit.linear_circuit import LinearCircuit
from src.circuit.transforms import collapse_last_layer, stack
from src.codeprops.checkers import MIN_DISTANCE_MAX_INPUTS, min_distance_with_witness
from src.codeprops.entropy import gv_admissible
from src.codeprops.models import PgcParams
from src.common.errors import DomainError, GvViolation, PreconditionUnmet, WorkbenchError
from src.common.logger import setup_logger
from src.common.trials import derive_seed

from .base_builder import BaseBuilder, BuildResult
from .base_pgc import search_base_pgc
from .booster import BoosterParams, RateBooster
from .composition import compose_pgcs, dyadic_bands
from .constants import ConstantTable
from .reduction import reduce_pgc

logger = setup_logger(__name__)


class GoodCodeBuilder(BaseBuilder):
    """Base PGC chain, composition, final booster and collapse."""

    def __init__(self, n: int, target_rate: float, target_delta: float, depth_budget: int, seed: int,
                 constants: Optional[ConstantTable] = None, **kwargs: Any):
        super().__init__(seed, **kwargs)
        if n < 2:
            raise DomainError(f"n must be at least 2, got {n}")
        if not 0 < target_delta < 0.5:
            raise DomainError(f"target_delta must lie in (0, 1/2), got {target_delta}")
        if not gv_admissible(target_rate, target_delta):
            raise GvViolation(f"rate {target_rate} and distance {target_delta} violate rate < 1 - h(delta)")
        if depth_budget < 1:
            raise PreconditionUnmet(f"a good code needs depth at least 1, got budget {depth_budget}")
        if n > MIN_DISTANCE_MAX_INPUTS:
            raise DomainError(f"minimum distance verification supports n <= {MIN_DISTANCE_MAX_INPUTS}, got {n}")
        self.n = n
        self.rate = target_rate
        self.delta = target_delta
        self.depth_budget = depth_budget
        self.constants = constants or ConstantTable()
        self.n_final = math.floor(n / target_rate)
        self.distance = math.ceil(target_delta * self.n_final)

    def _sub_kwargs(self) -> Dict[str, Any]:
        return {'max_trials': self.max_trials, 'jobs': self.jobs, 'profile': self.profile,
                'budget': self.budget, 'field_': self.field}

    def reduction_window(self) -> float:
        """Upper end of the band handled by a reduction at r = c0."""
        return self.n / float(self.constants.c0) ** 1.5

    def chain(self) -> Tuple[List[LinearCircuit], List[PgcParams], List[str]]:
        """Members covering [1, n], lowest band first."""
        circuits: List[LinearCircuit] = []
        params: List[PgcParams] = []
        kinds: List[str] = []
        start = 1.0
        window = self.reduction_window()
        if window >= 1 and self.depth_budget >= 4:
            c0 = float(self.constants.c0)
            n_small = math.floor(self.n / c0)
            inner = search_base_pgc(n_small, 1, n_small, 1, derive_seed(self.seed, 10), **self._sub_kwargs())
            reduced = reduce_pgc(self.n, c0, 1, window, inner.circuit, derive_seed(self.seed, 11), c0=c0,
                                 **self._sub_kwargs())
            circuits.append(reduced.circuit)
            params.append(self.profile.pgc_params(self.n, 1, window))
            kinds.append('reduction')
            start = window
        for index, (lo, hi) in enumerate(dyadic_bands(start, self.n)):
            base = search_base_pgc(self.n, lo, hi, 1, derive_seed(self.seed, 100 + index), **self._sub_kwargs())
            circuits.append(base.circuit)
            params.append(self.profile.pgc_params(self.n, lo, hi))
            kinds.append('base')
        return circuits, params, kinds

    def final_booster(self, composed: LinearCircuit) -> RateBooster:
        target = PgcParams(n_in=self.n, n_out=self.n_final, r=1, s=self.n, w_min=self.distance)
        params = BoosterParams(delta=float(self.profile.weight_factor), c=1 / self.rate, gamma=self.delta)
        return RateBooster(params, composed.num_outputs, self.n, derive_seed(self.seed, 2), n_out=self.n_final,
                           upstream=composed, target=target, **self._sub_kwargs())

    def build(self) -> BuildResult:
        circuits, params, kinds = self.chain()
        member_depth = max(c.depth for c in circuits)
        # composition adds a layer, the final booster adds one and collapse removes one
        mode = 'new_layer' if member_depth + 1 <= self.depth_budget else 'merge_and_collapse'
        if member_depth > self.depth_budget:
            raise PreconditionUnmet(f"members have depth {member_depth}, budget is {self.depth_budget}")
        fanin_bounds = [c.output_fanin() for c in circuits] if mode == 'merge_and_collapse' else None
        composed = compose_pgcs(circuits, params, mode, derive_seed(self.seed, 1), fanin_bounds=fanin_bounds,
                                **self._sub_kwargs())

        booster = self.final_booster(composed.circuit)
        boosted = booster.build()
        stacked = stack(composed.circuit, boosted.circuit)
        circuit = collapse_last_layer(stacked)
        collapse_preserved = circuit.generator_rows == stacked.generator_rows
        if not collapse_preserved:
            raise WorkbenchError("collapsing the booster layer changed the encoded map")

        distance, witness = min_distance_with_witness(circuit, self.budget)
        if distance < self.distance:
            raise WorkbenchError(f"good code has distance {distance} < {self.distance}, witness {witness}")
        logger.info(f"good code n={self.n} -> {self.n_final}: depth {circuit.depth}, {circuit.size()} wires, "
                    f"distance {distance}")

        report = self.base_report(
            circuit,
            target={'rate': self.rate, 'delta': self.delta, 'distance': self.distance,
                    'depth_budget': self.depth_budget},
            min_distance=distance,
            wires=circuit.size(),
            chain=[{'kind': kind, 'band': [p.r, p.s], 'depth': c.depth, 'size': c.size()}
                   for kind, p, c in zip(kinds, params, circuits)],
            composition=composed.report,
            booster=boosted.report,
            collapse_preserved=collapse_preserved,
            depth_before_collapse=stacked.depth,
        )
        return BuildResult(circuit, report)


def build_good_code(n: int, target_rate: float, target_delta: float, depth_budget: int, seed: int,
                    **kwargs: Any) -> BuildResult:
    """Verified linear code n -> floor(n/rate) with distance >= ceil(delta * floor(n/rate))."""
    return GoodCodeBuilder(n, target_rate, target_delta, depth_budget, seed, **kwargs).build()
