"""
Seeded sample-and-verify trial runner.

Trial ``t`` of a run seeded with ``seed`` always draws from the stream
``numpy.random.default_rng([seed, t])``, so any trial can be replayed alone.
Parallel runs evaluate trials in batches and merge them in trial-index order.
"""

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

import numpy as np

from .errors import DomainError, TrialsExhausted
from .logger import setup_logger

logger = setup_logger(__name__)


@dataclass
class TrialOutcome:
    """Result of one trial: verified or not, the candidate, and why it failed."""
    ok: bool
    value: Any = None
    reason: str = ''
    stats: Dict[str, Any] = field(default_factory=dict)


@dataclass
class TrialRun:
    """First verified trial together with the statistics of the failed ones."""
    index: int
    outcome: TrialOutcome
    failures: Dict[str, int]

    @property
    def trials_used(self) -> int:
        return self.index + 1


TrialFn = Callable[[Any, int, int], TrialOutcome]


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Random stream for trial ``trial`` of a run seeded with ``seed``."""
    if seed < 0 or trial < 0:
        raise DomainError(f"seed and trial index must be nonnegative, got {seed}, {trial}")
    return np.random.default_rng([seed, trial])


def first_verified_trial(
    trial_fn: TrialFn,
    payload: Any,
    seed: int,
    max_trials: int,
    jobs: int = 1,
    what: str = 'sample-and-verify'
) -> TrialRun:
    """
    Run trials until one verifies.

    Args:
        trial_fn: Module-level function ``(payload, seed, trial) -> TrialOutcome``
        payload: Picklable parameters shared by all trials
        seed: Master seed
        max_trials: Trial cap
        jobs: Worker processes; 1 runs in-process
        what: Label used in logs and errors

    Returns:
        The lowest-index verified trial

    Raises:
        TrialsExhausted: no trial verified; statistics hold failure counts per reason
    """
    if max_trials < 1:
        raise DomainError(f"max_trials must be positive, got {max_trials}")

    failures: Counter = Counter()
    enumerated = 0

    def _record(index: int, outcome: TrialOutcome) -> Optional[TrialRun]:
        nonlocal enumerated
        enumerated += int(outcome.stats.get('enumerated', 0))
        if outcome.ok:
            logger.debug(f"{what}: trial {index} verified")
            return TrialRun(index=index, outcome=outcome, failures=dict(failures))
        failures[outcome.reason or 'unverified'] += 1
        return None

    if jobs <= 1:
        for index in range(max_trials):
            run = _record(index, trial_fn(payload, seed, index))
            if run is not None:
                return run
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for start in range(0, max_trials, jobs):
                indices = list(range(start, min(start + jobs, max_trials)))
                outcomes = pool.map(trial_fn, [payload] * len(indices), [seed] * len(indices), indices)
                for index, outcome in zip(indices, outcomes):
                    run = _record(index, outcome)
                    if run is not None:
                        return run

    statistics = {'failures': dict(failures), 'enumerated': enumerated, 'seed': seed}
    logger.warning(f"{what}: exhausted {max_trials} trials, failures by reason {dict(failures)}")
    raise TrialsExhausted(what, max_trials, statistics)


def derive_seed(seed: int, stage: int) -> int:
    """Independent master seed for a sub-builder, fixed by (seed, stage)."""
    return int(np.random.SeedSequence([seed, stage]).generate_state(1)[0])
