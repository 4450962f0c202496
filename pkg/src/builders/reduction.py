"""
Reduction: an (n, s, t)-PGC from a PGC on floor(n/r) inputs.

condenser (n -> floor(n/r)), then the inner PGC, then an amplifier back up to
output_factor * n outputs. The amplifier is accepted against the whole stack.
"""

import math
from typing import Any, Optional

from src.circuit.linear_circuit import LinearCircuit
from src.circuit.transforms import stack
from src.codeprops.checkers import check_pgc
from src.common.errors import PreconditionUnmet, ShapeMismatch, WorkbenchError
from src.common.logger import setup_logger
from src.common.trials import derive_seed

from .amplifier import Amplifier
from .base_builder import BaseBuilder, BuildResult
from .base_pgc import search_base_pgc
from .condenser import CondenserSearch, condenser_window
from .constants import ConstantTable

logger = setup_logger(__name__)


class PgcReduction(BaseBuilder):
    """Wrap an inner PGC between a condenser and an amplifier."""

    def __init__(self, n: int, r: float, s: float, t: Optional[float], inner: LinearCircuit, seed: int,
                 c0: float = 6, **kwargs: Any):
        """
        Args:
            n: Inputs of the result
            r: Shrink factor, c0 <= r <= n
            s: Lower end of the band
            t: Upper end of the band, at most n / r^{1.5} (default that value)
            inner: PGC on floor(n/r) inputs with output_factor * floor(n/r) outputs
            seed: Master seed
            c0: Condenser constant
        """
        super().__init__(seed, **kwargs)
        self.n = n
        self.r = r
        self.s = s
        self.t = condenser_window(n, r) if t is None else t
        self.c0 = c0
        self.n_small = math.floor(n / r) if r > 0 else 0
        if self.n_small < 1:
            raise PreconditionUnmet(f"floor(n/r) must be positive, got n={n}, r={r}")
        expected = (self.n_small, self.profile.n_out(self.n_small))
        if (inner.num_inputs, inner.num_outputs) != expected:
            raise ShapeMismatch(f"inner PGC must be {expected[0]}->{expected[1]}, "
                                f"got {inner.num_inputs}->{inner.num_outputs}")
        self.inner = inner
        self.target = self.profile.pgc_params(n, s, self.t)

    def _sub_kwargs(self) -> dict:
        return {'max_trials': self.max_trials, 'jobs': self.jobs, 'profile': self.profile,
                'budget': self.budget, 'field_': self.field}

    def build(self) -> BuildResult:
        condenser = CondenserSearch(self.n, self.r, self.s, derive_seed(self.seed, 1), t=self.t, c0=self.c0,
                                    **self._sub_kwargs()).build()
        upper = stack(condenser.circuit, self.inner)
        amplifier_builder = Amplifier(self.inner.num_outputs, self.target.n_out, derive_seed(self.seed, 2),
                                      upstream=upper, target=self.target, **self._sub_kwargs())
        amplifier = amplifier_builder.build()
        circuit = stack(upper, amplifier.circuit)
        verdict = check_pgc(circuit, self.target, self.budget)
        if not verdict.ok:
            raise WorkbenchError(f"reduced circuit fails its band at {verdict.counterexample}")
        report = self.base_report(circuit, verdict=verdict, target=self.target.model_dump(), r=float(self.r),
                                  inner_depth=self.inner.depth, condenser=condenser.report,
                                  amplifier=amplifier.report,
                                  output_fanin_bound=amplifier_builder.plan.fanin_bound())
        return BuildResult(circuit, report)


def reduce_pgc(n: int, r: float, s: float, t: Optional[float], inner: LinearCircuit, seed: int,
               **kwargs: Any) -> BuildResult:
    """Verified (n, s, t)-PGC of depth depth(inner) + 2."""
    return PgcReduction(n, r, s, t, inner, seed, **kwargs).build()


def handy_inner_budget(n_small: int, r: float, constants: ConstantTable) -> int:
    """c3 * n * log2(4 r^2)^2 wires for the depth-2 inner circuit."""
    return math.floor(float(constants.c3) * n_small * math.log2(4 * r * r) ** 2)


def build_handy(n: int, r: float, seed: int, constants: Optional[ConstantTable] = None,
                **kwargs: Any) -> BuildResult:
    """
    Depth-4 PGC on the band [n/(4r^2), n/r]: one reduction with shrink factor
    floor(sqrt(r)) around a depth-2 base PGC.

    The lower end is raised to 1 when n/(4r^2) < 1; the report records the
    requested and the used value.
    """
    constants = constants or ConstantTable()
    shrink = math.isqrt(math.floor(r))
    if shrink < constants.c0:
        raise PreconditionUnmet(f"floor(sqrt(r)) = {shrink} is below c0 = {constants.c0}")
    requested_s = n / (4 * r * r)
    s = max(1.0, requested_s)
    t = n / r
    if s > t:
        raise PreconditionUnmet(f"empty band [{s}, {t}] at n={n}, r={r}")
    n_small = n // shrink
    budget = handy_inner_budget(n_small, r, constants)
    inner = search_base_pgc(n_small, s, n_small, 2, derive_seed(seed, 0), wire_budget=budget, **kwargs)
    result = reduce_pgc(n, shrink, s, t, inner.circuit, seed, c0=float(constants.c0), **kwargs)
    result.report.update({'handy': {'r': r, 'shrink': shrink, 'requested_s': requested_s, 's': s, 't': t,
                                    'inner_wire_budget': budget}, 'inner': inner.report})
    logger.info(f"handy circuit n={n}, r={r}: depth {result.circuit.depth}, {result.circuit.size()} wires")
    return result
