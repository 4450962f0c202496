"""
Composition of PGCs on adjacent bands.

The members are merged with random coefficients, which keeps a weight floor
of 1/8 of the target on the union band; a rate booster then restores the full
floor. In ``new_layer`` mode the booster adds one layer, in
``merge_and_collapse`` mode its layer is collapsed into the merge layer.
"""

from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.circuit.linear_circuit import LinearCircuit
from src.circuit.transforms import collapse_last_layer, merge_outputs, stack
from src.codeprops.checkers import check_pgc
from src.codeprops.entropy import composition_exponent
from src.codeprops.models import PgcParams
from src.common.errors import DomainError, FaninUnbounded, ShapeMismatch, WorkbenchError
from src.common.logger import setup_logger
from src.common.trials import TrialOutcome, derive_seed, trial_rng
from src.gf.field import PrimeField

from .base_builder import BaseBuilder, BuildResult
from .booster import BoosterParams, RateBooster

logger = setup_logger(__name__)

MODES = ('new_layer', 'merge_and_collapse')


def _merge_trial(payload: Tuple[Tuple[LinearCircuit, ...], PgcParams, PrimeField, int], seed: int,
                 trial: int) -> TrialOutcome:
    circuits, floor_params, field_, budget = payload
    rng = trial_rng(seed, trial)
    coeffs = rng.integers(0, field_.q, size=(len(circuits), floor_params.n_out))
    merged = merge_outputs(circuits, coeffs.tolist())
    verdict = check_pgc(merged, floor_params, budget)
    return TrialOutcome(ok=verdict.ok, value=(merged, verdict), reason='' if verdict.ok else 'merge floor',
                        stats={'enumerated': verdict.enumerated})


def composition_booster_params(profile_output_factor: int, weight_factor: float,
                               merge_floor_ratio: float) -> BoosterParams:
    """Booster from the merge floor back to the full weight floor, N = output_factor * n outputs."""
    return BoosterParams(delta=float(weight_factor * merge_floor_ratio), c=float(profile_output_factor),
                         gamma=float(weight_factor / profile_output_factor))


class PgcComposer(BaseBuilder):
    """Merge PGCs covering a chain of bands and boost the result."""

    def __init__(self, circuits: Sequence[LinearCircuit], params: Sequence[PgcParams], seed: int,
                 mode: str = 'new_layer', fanin_bounds: Optional[Sequence[int]] = None, **kwargs: Any):
        """
        Args:
            circuits: Member PGCs, all n -> N over one field
            params: Their bands, in chain order (each band starts no later than the previous ends)
            seed: Master seed
            mode: ``new_layer`` or ``merge_and_collapse``
            fanin_bounds: Output fanin bound of each member; required to collapse
        """
        super().__init__(seed, **kwargs)
        if mode not in MODES:
            raise DomainError(f"unknown composition mode {mode!r}, expected one of {MODES}")
        if not circuits:
            raise DomainError("composition needs at least one circuit")
        if len(params) != len(circuits):
            raise ShapeMismatch(f"{len(circuits)} circuits but {len(params)} parameter sets")
        first = circuits[0]
        for c, p in zip(circuits, params):
            if c.field != first.field or c.num_inputs != first.num_inputs or c.num_outputs != first.num_outputs:
                raise ShapeMismatch("composed circuits must share field, inputs and outputs")
            if (p.n_in, p.n_out) != (c.num_inputs, c.num_outputs):
                raise ShapeMismatch(f"params {p.n_in}->{p.n_out} do not match circuit "
                                    f"{c.num_inputs}->{c.num_outputs}")
        for lower, upper in zip(params, params[1:]):
            if upper.r > lower.s or upper.r < lower.r:
                raise DomainError(f"bands do not chain: [{lower.r}, {lower.s}] then [{upper.r}, {upper.s}]")
        if mode == 'merge_and_collapse':
            if fanin_bounds is None:
                raise FaninUnbounded("merge_and_collapse needs an output fanin bound for every member")
            if len(fanin_bounds) != len(circuits):
                raise ShapeMismatch("one fanin bound per circuit is required")
            for c, bound in zip(circuits, fanin_bounds):
                if c.output_fanin() > bound:
                    raise DomainError(f"member output fanin {c.output_fanin()} exceeds its bound {bound}")

        self.circuits = tuple(circuits)
        self.params = tuple(params)
        self.mode = mode
        self.fanin_bounds = tuple(fanin_bounds) if fanin_bounds is not None else None
        self.field = first.field
        self.n = first.num_inputs
        self.n_out = first.num_outputs
        w_min = min(p.w_min for p in params)
        self.target = PgcParams(n_in=self.n, n_out=self.n_out, r=params[0].r, s=max(p.s for p in params),
                                w_min=w_min)
        self.floor_params = self.target.model_copy(update={'w_min': float(self.profile.merge_floor_ratio) * w_min})

    def merge(self) -> Tuple[LinearCircuit, Dict[str, Any]]:
        """Random-coefficient merge verified against the reduced floor on the union band."""
        if len(self.circuits) == 1:
            return self.circuits[0], {'skipped': True}
        run = self.run_trials(_merge_trial, (self.circuits, self.floor_params, self.field, self.budget),
                              what=f"merge of {len(self.circuits)} PGCs")
        merged, verdict = run.outcome.value
        return merged, {'trials_used': run.trials_used, 'failures': dict(run.failures), 'verdict': verdict.to_dict()}

    def booster(self, merged: LinearCircuit) -> RateBooster:
        profile = self.profile
        params = composition_booster_params(profile.output_factor, float(profile.weight_factor),
                                            float(profile.merge_floor_ratio))
        return RateBooster(params, self.n_out, self.n, derive_seed(self.seed, 1), n_out=self.n_out,
                           upstream=merged, target=self.target, max_trials=self.max_trials, jobs=self.jobs,
                           profile=profile, budget=self.budget, field_=self.field)

    def build(self) -> BuildResult:
        merged, merge_report = self.merge()
        booster = self.booster(merged)
        boosted = booster.build()
        circuit = stack(merged, boosted.circuit)
        report_extra: Dict[str, Any] = {'mode': self.mode, 'members': len(self.circuits),
                                        'bands': [[p.r, p.s] for p in self.params],
                                        'merge': merge_report, 'booster': boosted.report,
                                        'failure_bound_log2': -composition_exponent() * self.n}
        if self.mode == 'merge_and_collapse':
            circuit = collapse_last_layer(circuit)
            bound = booster.plan.fanin_bound() * sum(self.fanin_bounds or ())
            report_extra['output_fanin_bound'] = bound
        verdict = check_pgc(circuit, self.target, self.budget)
        if not verdict.ok:
            raise WorkbenchError(f"composed circuit fails its band at {verdict.counterexample}")
        report = self.base_report(circuit, verdict=verdict, target=self.target.model_dump(), **report_extra)
        return BuildResult(circuit, report)


def compose_pgcs(circuits: Sequence[LinearCircuit], params: Sequence[PgcParams], mode: str, seed: int,
                 fanin_bounds: Optional[Sequence[int]] = None, **kwargs: Any) -> BuildResult:
    """Verified PGC on the union of the members' bands."""
    return PgcComposer(circuits, params, seed, mode=mode, fanin_bounds=fanin_bounds, **kwargs).build()


def dyadic_bands(lo: float, hi: float) -> List[Tuple[float, float]]:
    """[lo, 2lo], [2lo, 4lo], ... up to hi; the last band is clipped."""
    if not 1 <= lo <= hi:
        raise DomainError(f"need 1 <= lo <= hi, got {lo}, {hi}")
    bands = []
    start = lo
    while True:
        end = min(2 * start, hi)
        bands.append((start, end))
        if end >= hi:
            return bands
        start = end
