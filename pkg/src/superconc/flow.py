"""
Vertex-disjoint paths through vertex splitting and max flow.

Every vertex v becomes an arc (v, 'in') -> (v, 'out') of capacity 1, endpoints
included; all other arcs are uncapacitated, so a minimum cut consists of
vertex arcs only and reads off as a separating vertex set.
"""

import logging
import math
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.flow import dinitz

from src.codeprops.models import Verdict
from src.common.errors import BudgetExceeded, DomainError
from src.common.logger import log_verification_failure, setup_logger
from src.common.utils import stopwatch

from config.settings import workbench_config

from .dag import LayeredDag, Vertex

logger = setup_logger(__name__)

SOURCE = 'source'
SINK = 'sink'


def split_graph(g: LayeredDag) -> nx.DiGraph:
    """Vertex-split flow network of g, without source and sink."""
    network = nx.DiGraph()
    for v in g.vertices():
        network.add_edge((v, 'in'), (v, 'out'), capacity=1)
    for u, v in g.edges:
        network.add_edge((u, 'out'), (v, 'in'))
    return network


def _attach(network: nx.DiGraph, X: Sequence[Vertex], Y: Sequence[Vertex]) -> nx.DiGraph:
    flow = network.copy()
    for x in X:
        flow.add_edge(SOURCE, (x, 'in'))
    for y in Y:
        flow.add_edge((y, 'out'), SINK)
    return flow


def _check_terminals(g: LayeredDag, X: Sequence[int], Y: Sequence[int]) -> Tuple[List[Vertex], List[Vertex]]:
    if not X or not Y:
        raise DomainError("X and Y must be nonempty")
    if any(not 0 <= i < g.num_inputs for i in X) or any(not 0 <= j < g.num_outputs for j in Y):
        raise DomainError(f"terminals out of range: X={list(X)}, Y={list(Y)}")
    return [(0, i) for i in sorted(set(X))], [(g.last_layer, j) for j in sorted(set(Y))]


def max_vertex_disjoint_paths(g: LayeredDag, X: Sequence[int], Y: Sequence[int],
                              network: Optional[nx.DiGraph] = None) -> int:
    """
    Maximum number of fully vertex-disjoint paths from inputs X to outputs Y.

    Args:
        g: Layered DAG
        X: Input indices (layer 0)
        Y: Output indices (last layer)
        network: Precomputed split_graph(g), reused across queries
    """
    xs, ys = _check_terminals(g, X, Y)
    flow = _attach(network if network is not None else split_graph(g), xs, ys)
    return int(nx.maximum_flow_value(flow, SOURCE, SINK, flow_func=dinitz))


def min_vertex_cut(g: LayeredDag, X: Sequence[int], Y: Sequence[int],
                   network: Optional[nx.DiGraph] = None) -> List[Vertex]:
    """A minimum vertex set meeting every X-Y path (Menger certificate)."""
    xs, ys = _check_terminals(g, X, Y)
    flow = _attach(network if network is not None else split_graph(g), xs, ys)
    _, (reachable, _) = nx.minimum_cut(flow, SOURCE, SINK, flow_func=dinitz)
    return sorted(v for v in g.vertices() if (v, 'in') in reachable and (v, 'out') not in reachable)


def superconcentrator_pairs(n: int, m: int) -> int:
    """Number of equal-size pairs (X, Y) with X a subset of [n], Y of [m]."""
    return sum(math.comb(n, k) * math.comb(m, k) for k in range(1, min(n, m) + 1))


def is_superconcentrator(g: LayeredDag, budget: Optional[int] = None) -> Verdict:
    """
    Check that every equal-size pair (X, Y) is joined by |X| vertex-disjoint paths.

    Pairs are visited by size, then X, then Y, in lexicographic order; the first
    failing pair is reported with a cut certificate.

    Raises:
        BudgetExceeded: more pairs than ``budget``
    """
    budget = workbench_config.enum_budget if budget is None else budget
    required = superconcentrator_pairs(g.num_inputs, g.num_outputs)
    if required > budget:
        raise BudgetExceeded("superconcentrator pairs", required, budget)

    network = split_graph(g)
    checked = 0
    with stopwatch() as timing:
        for k in range(1, min(g.num_inputs, g.num_outputs) + 1):
            for X in combinations(range(g.num_inputs), k):
                for Y in combinations(range(g.num_outputs), k):
                    checked += 1
                    paths = max_vertex_disjoint_paths(g, X, Y, network)
                    if paths < k:
                        cut = min_vertex_cut(g, X, Y, network)
                        witness = {'X': list(X), 'Y': list(Y), 'k': k, 'paths': paths,
                                   'cut': [list(v) for v in cut]}
                        log_verification_failure(logger, 'superconcentrator', witness, level=logging.DEBUG)
                        return Verdict(ok=False, counterexample=witness, enumerated=checked,
                                       elapsed_ms=timing['elapsed_ms'])
    return Verdict(ok=True, enumerated=checked, elapsed_ms=timing['elapsed_ms'])
