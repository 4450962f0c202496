"""
Base builder class providing the sample-and-verify plumbing shared by all constructions.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from src.bipartite.graph import BipartiteGraph
from src.circuit.linear_circuit import CircuitSkeleton, LinearCircuit, Wire
from src.circuit.transforms import assign_random_coefficients, stack
from src.codeprops.checkers import check_pgc, check_range_detector
from src.codeprops.models import PgcParams, RangeDetectorParams, Verdict
from src.common.errors import DomainError
from src.common.logger import setup_logger
from src.common.trials import TrialFn, TrialRun, first_verified_trial
from src.gf.bitvector import BitVector
from src.gf.field import GF2, PrimeField

from config.settings import workbench_config

from .constants import ScaleProfile, profile_for

logger = setup_logger(__name__)


@dataclass
class BuildResult:
    """A verified circuit and the report describing how it was obtained."""
    circuit: LinearCircuit
    report: Dict[str, Any] = field(default_factory=dict)


def graph_skeleton(g: BipartiteGraph) -> CircuitSkeleton:
    """Depth-1 skeleton: one gate per right vertex, wired from its left neighbors."""
    incoming = [[] for _ in range(g.n_right)]
    for u, row in enumerate(g.adjacency):
        for v in row:
            incoming[v].append((0, u))
    return CircuitSkeleton(g.n_left, (tuple(tuple(gate) for gate in incoming),),
                           tuple((1, j) for j in range(g.n_right)))


def layer_from_graph(g: BipartiteGraph, field_: PrimeField, rng: np.random.Generator,
                     all_ones: bool = False) -> LinearCircuit:
    """Replace every right vertex by a sum gate; coefficients uniform, or all 1."""
    skeleton = graph_skeleton(g)
    if not all_ones:
        return assign_random_coefficients(skeleton, field_, rng)
    layer = tuple(tuple(Wire(src[0], src[1], 1) for src in gate) for gate in skeleton.layers[0])
    return LinearCircuit(field_, g.n_left, (layer,), skeleton.outputs)


class BaseBuilder(ABC):
    """
    Base class for all circuit builders.

    Subclasses sample candidates with a module-level trial function and accept
    the lowest-index trial that passes its exhaustive checker.
    """

    def __init__(
        self,
        seed: int,
        max_trials: Optional[int] = None,
        jobs: Optional[int] = None,
        profile: Optional[ScaleProfile] = None,
        budget: Optional[int] = None,
        field_: PrimeField = GF2
    ):
        """
        Initialize the builder.

        Args:
            seed: Master seed; trial t draws from the stream (seed, t)
            max_trials: Trial cap (default from WORKBENCH_MAX_TRIALS)
            jobs: Worker processes (default from WORKBENCH_JOBS)
            profile: Scale profile (default from WORKBENCH_SCALED_CONSTANTS)
            budget: Enumeration budget for verification (default from WORKBENCH_ENUM_BUDGET)
            field_: Coefficient field
        """
        self.seed = seed
        self.max_trials = workbench_config.max_trials if max_trials is None else max_trials
        self.jobs = workbench_config.jobs if jobs is None else jobs
        self.profile = profile if profile is not None else profile_for()
        self.budget = workbench_config.enum_budget if budget is None else budget
        self.field = field_

        logger.debug(f"Initialized {self.__class__.__name__} (seed={seed}, profile={self.profile.name}, "
                     f"max_trials={self.max_trials})")

    @abstractmethod
    def build(self) -> BuildResult:
        """
        Sample, verify and return the construction.
        Must be implemented by subclasses.
        """
        pass

    def run_trials(self, trial_fn: TrialFn, payload: Any, what: str) -> TrialRun:
        """Run the sample-and-verify loop and log its statistics."""
        run = first_verified_trial(trial_fn, payload, self.seed, self.max_trials, self.jobs, what=what)
        logger.info(f"{what}: verified on trial {run.index} after {sum(run.failures.values())} failures"
                    f"{' ' + str(run.failures) if run.failures else ''}")
        return run

    def base_report(self, circuit: LinearCircuit, run: Optional[TrialRun] = None,
                    verdict: Optional[Verdict] = None, **extra: Any) -> Dict[str, Any]:
        """Fields every builder report carries."""
        report: Dict[str, Any] = {
            'builder': self.__class__.__name__,
            'profile': self.profile.name,
            'seed': self.seed,
            'field': circuit.field.tag(),
            'num_inputs': circuit.num_inputs,
            'num_outputs': circuit.num_outputs,
            'depth': circuit.depth,
            'size': circuit.size(),
            'output_fanin': circuit.output_fanin(),
        }
        if run is not None:
            report['trials_used'] = run.trials_used
            report['failures'] = dict(run.failures)
        if verdict is not None:
            report['verdict'] = verdict.to_dict()
        report.update(extra)
        return report


@dataclass(frozen=True)
class Acceptance:
    """
    Condition a sampled layer must meet.

    ``band``: the layer alone satisfies ``params`` (PGC or range detector).
    ``inputs``: every packed word in ``words`` encodes to weight >= ``threshold``.
    ``composite``: stack(upstream, layer) satisfies the PGC ``params``.
    """
    mode: str
    params: Optional[Union[PgcParams, RangeDetectorParams]] = None
    words: Tuple[int, ...] = ()
    threshold: float = 0.0
    upstream: Optional[LinearCircuit] = None

    def __post_init__(self):
        if self.mode not in ('band', 'inputs', 'composite'):
            raise DomainError(f"unknown acceptance mode {self.mode!r}")
        if self.mode in ('band', 'composite') and self.params is None:
            raise DomainError(f"acceptance mode {self.mode!r} needs params")
        if self.mode == 'composite' and self.upstream is None:
            raise DomainError("composite acceptance needs the upstream circuit")


def accept_layer(layer: LinearCircuit, acceptance: Acceptance, budget: Optional[int] = None) -> Verdict:
    """Run the checker that decides a sampled layer."""
    if acceptance.mode == 'inputs':
        for position, word in enumerate(acceptance.words):
            weight = layer.encode_bits(word).bit_count()
            if weight < acceptance.threshold:
                return Verdict(ok=False, counterexample=str(BitVector(word, layer.num_inputs)), enumerated=position + 1,
                               detail={'output_weight': weight})
        return Verdict(ok=True, enumerated=len(acceptance.words))

    target = layer if acceptance.mode == 'band' else stack(acceptance.upstream, layer)
    if isinstance(acceptance.params, RangeDetectorParams):
        return check_range_detector(target, acceptance.params, budget)
    return check_pgc(target, acceptance.params, budget)
