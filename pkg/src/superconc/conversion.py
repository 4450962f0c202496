"""
Superconcentrators to arithmetic circuits and the resulting codes.

Every non-input vertex becomes an addition gate and every edge a wire with a
uniform GF(q) coefficient. Generator entries are then polynomials of degree at
most depth(g) in the edge coefficients, so a square minor over equal-size
(X, Y) vanishes with probability at most depth * |X| / q when the paths exist,
and always when a cut smaller than |X| separates X from Y.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional, Union

import numpy as np

from src.circuit.linear_circuit import LinearCircuit, Wire
from src.codeprops.models import Verdict
from src.codeprops.sc_codes import is_sc_induced_code
from src.common.errors import PreconditionUnmet
from src.common.logger import setup_logger
from src.common.trials import derive_seed, trial_rng
from src.common.utils import stopwatch
from src.gf.field import field_from_spec
from src.gf.matrix import rank

from .dag import LayeredDag
from .flow import is_superconcentrator

logger = setup_logger(__name__)


def sc_to_circuit(g: LayeredDag, q: int, seed: Union[int, np.random.Generator]) -> LinearCircuit:
    """
    Vertex-for-gate transcription of g with i.i.d. uniform coefficients.

    Coefficients are drawn in sorted edge order; zero draws stay as explicit
    wires, so the circuit is non-canonical whenever one occurs.
    """
    field_ = field_from_spec(q)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    draws = rng.integers(0, field_.q, size=len(g.edges)) if g.edges else np.zeros(0, dtype=np.int64)
    gates: Dict[tuple, list] = {v: [] for v in g.vertices() if v[0] > 0}
    for (u, v), coeff in zip(g.edges, draws):
        gates[v].append(Wire(u[0], u[1], int(coeff)))
    layers = tuple(
        tuple(tuple(gates[(layer, i)]) for i in range(g.layers[layer]))
        for layer in range(1, len(g.layers))
    )
    has_zero = any(int(c) == 0 for c in draws)
    return LinearCircuit(field_, g.num_inputs, layers, tuple((g.last_layer, j) for j in range(g.num_outputs)),
                         canonical=not has_zero)


def success_lower_bound(n: int, m: int, depth: int, q: int) -> Fraction:
    """1 - sum_i C(n,i) C(m,i) depth i / q, clamped to [0, 1]."""
    total = sum(math.comb(n, i) * math.comb(m, i) * depth * i for i in range(1, min(n, m) + 1))
    return min(Fraction(1), max(Fraction(0), 1 - Fraction(total, q)))


@dataclass
class ScConversionReport:
    q: int
    seed: int
    success: bool
    lower_bound_on_success_prob: Fraction
    depth: int
    failing_minor: Optional[Dict[str, Any]] = None
    verdict: Optional[Verdict] = None
    wires: int = 0
    zero_wires: int = 0
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'q': self.q,
            'seed': self.seed,
            'success': self.success,
            'lower_bound_on_success_prob': str(self.lower_bound_on_success_prob),
            'depth': self.depth,
            'failing_minor': self.failing_minor,
            'verdict': self.verdict.to_dict() if self.verdict else None,
            'wires': self.wires,
            'zero_wires': self.zero_wires,
            **self.extra,
        }

    def to_json(self) -> Dict[str, Any]:
        return self.to_dict()


def sc_code_attempt(g: LayeredDag, q: int, seed: int, budget: Optional[int] = None) -> ScConversionReport:
    """Convert g, then test every square minor of the generator matrix."""
    circuit = sc_to_circuit(g, q, seed)
    verdict = is_sc_induced_code(circuit.generator_matrix(), budget)
    depth = g.depth()
    zero_wires = sum(1 for layer in circuit.layers for gate in layer for w in gate if w.coeff == 0)
    return ScConversionReport(
        q=q, seed=seed, success=verdict.ok,
        lower_bound_on_success_prob=success_lower_bound(g.num_inputs, g.num_outputs, depth, q),
        depth=depth, failing_minor=None if verdict.ok else verdict.counterexample, verdict=verdict,
        wires=circuit.size(), zero_wires=zero_wires,
    )


def sc_success_rate(g: LayeredDag, q: int, seeds: int, seed: int, budget: Optional[int] = None) -> Dict[str, Any]:
    """Empirical success frequency of sc_code_attempt over ``seeds`` derived seeds."""
    successes = 0
    with stopwatch() as timing:
        for index in range(seeds):
            successes += sc_code_attempt(g, q, derive_seed(seed, index), budget).success
    bound = success_lower_bound(g.num_inputs, g.num_outputs, g.depth(), q)
    rate = successes / seeds if seeds else 0.0
    sigma = math.sqrt(float(bound) * (1 - float(bound)) / seeds) if seeds else 0.0
    logger.info(f"sc conversion q={q}: {successes}/{seeds} succeeded, analytic bound {float(bound):.6f}")
    return {'q': q, 'seeds': seeds, 'successes': successes, 'rate': rate, 'lower_bound': bound,
            'sigma': sigma, 'consistent': rate >= float(bound) - 3 * sigma, 'elapsed_ms': timing['elapsed_ms']}


def non_sc_implies_not_code(g: LayeredDag, q: int, trials: int, seed: int,
                            budget: Optional[int] = None) -> Verdict:
    """
    Confirm that a non-superconcentrator never yields a superconcentrator-induced code.

    For the failing pair (X, Y) with cut C, every coefficient assignment gives
    rank(M_{X,Y}) <= |C| < |X|.

    Raises:
        PreconditionUnmet: g is a superconcentrator
    """
    sc = is_superconcentrator(g, budget)
    if sc.ok:
        raise PreconditionUnmet("the graph is a superconcentrator")
    X, Y = sc.counterexample['X'], sc.counterexample['Y']
    cut_size = len(sc.counterexample['cut'])
    ranks = []
    with stopwatch() as timing:
        for trial in range(trials):
            matrix = sc_to_circuit(g, q, trial_rng(seed, trial)).generator_matrix()
            minor_rank = rank(matrix.submatrix(X, Y))
            ranks.append(minor_rank)
            if minor_rank > cut_size or minor_rank >= len(X):
                return Verdict(ok=False, counterexample={'trial': trial, 'rank': minor_rank},
                               enumerated=trial + 1, elapsed_ms=timing['elapsed_ms'])
    return Verdict(ok=True, enumerated=trials, elapsed_ms=timing['elapsed_ms'],
                   detail={'X': X, 'Y': Y, 'cut_size': cut_size, 'max_rank': max(ranks, default=0)})
