"""
Condenser search: a depth-1 (n, floor(n/r), s, t, s)-range detector within 6n wires.

Each input is wired to at most six outputs drawn uniformly; coefficients are
1 over GF(2) and uniform nonzero-or-dropped over GF(q).
"""

import math
from fractions import Fraction
from typing import Any, Optional, Tuple, Union

from src.bipartite.disperser import sample_left_regular
from src.codeprops.checkers import check_range_detector
from src.codeprops.models import RangeDetectorParams
from src.common.errors import PreconditionUnmet
from src.common.logger import setup_logger
from src.common.trials import TrialOutcome, trial_rng
from src.gf.field import PrimeField

from .base_builder import BaseBuilder, BuildResult, layer_from_graph

logger = setup_logger(__name__)

LEFT_DEGREE = 6
Real = Union[int, float, Fraction]


def condenser_window(n: int, r: Real) -> float:
    """Upper end n / r^{1.5} of the admissible band."""
    return n / float(r) ** 1.5


def _condenser_trial(payload: Tuple[int, int, RangeDetectorParams, PrimeField, int, int], seed: int,
                     trial: int) -> TrialOutcome:
    n, n_out, params, field_, budget, size_budget = payload
    rng = trial_rng(seed, trial)
    graph = sample_left_regular(n, n_out, LEFT_DEGREE, rng)
    layer = layer_from_graph(graph, field_, rng, all_ones=field_.is_binary)
    if layer.size() > size_budget:
        return TrialOutcome(ok=False, reason='wire budget', stats={'wires': layer.size()})
    verdict = check_range_detector(layer, params, budget)
    return TrialOutcome(ok=verdict.ok, value=(layer, verdict), reason='' if verdict.ok else 'range',
                        stats={'enumerated': verdict.enumerated})


class CondenserSearch(BaseBuilder):
    """Randomized search for a condenser under the 6n wire budget."""

    def __init__(self, n: int, r: Real, s: Real, seed: int, t: Optional[Real] = None,
                 c0: Real = 6, size_budget: Optional[int] = None, **kwargs: Any):
        """
        Args:
            n: Inputs
            r: Shrink factor, at least c0
            s: Lower end of the input band and the output weight floor
            seed: Master seed
            t: Upper end of the input band (default n / r^{1.5})
            c0: Condenser constant
            size_budget: Wire budget (default 6n)
        """
        super().__init__(seed, **kwargs)
        window = condenser_window(n, r)
        upper = window if t is None else float(t)
        if r < c0 or r > n:
            raise PreconditionUnmet(f"condenser needs c0 <= r <= n, got r={r}, c0={c0}, n={n}")
        if not 1 <= s <= upper <= window + 1e-12:
            raise PreconditionUnmet(f"condenser needs 1 <= s <= t <= n/r^1.5 = {window:.6f}, got s={s}, t={upper}")
        self.n = n
        self.r = r
        self.n_out = math.floor(n / r)
        self.size_budget = LEFT_DEGREE * n if size_budget is None else size_budget
        self.params = RangeDetectorParams(m_in=n, n_out=self.n_out, ell=float(s), k=upper, r=float(s))

    def build(self) -> BuildResult:
        payload = (self.n, self.n_out, self.params, self.field, self.budget, self.size_budget)
        run = self.run_trials(_condenser_trial, payload, what=f"condenser {self.n}->{self.n_out}")
        layer, verdict = run.outcome.value
        report = self.base_report(layer, run, verdict, r=float(self.r), band=[self.params.ell, self.params.k],
                                  size_budget=self.size_budget)
        return BuildResult(layer, report)


def search_condenser(n: int, r: Real, s: Real, seed: int, size_budget: Optional[int] = None,
                     **kwargs: Any) -> BuildResult:
    """Verified (n, floor(n/r), s, n/r^{1.5}, s)-range detector of depth 1."""
    return CondenserSearch(n, r, s, seed, size_budget=size_budget, **kwargs).build()
