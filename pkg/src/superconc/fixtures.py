"""
Small layered DAGs used as superconcentrator fixtures.
"""

from typing import Tuple

from src.common.errors import DomainError

from .dag import LayeredDag


def make_complete_bipartite_sc(n: int, m: int) -> LayeredDag:
    """K_{n,m}: every input wired to every output."""
    if n < 1 or m < 1:
        raise DomainError(f"sizes must be positive, got {n}, {m}")
    return LayeredDag.from_edges([n, m], [(0, i, 1, j) for i in range(n) for j in range(m)])


def make_sandwich_sc(n: int, mid: int, m: int) -> LayeredDag:
    """Inputs complete to a middle layer complete to the outputs; a superconcentrator iff mid >= min(n, m)."""
    if min(n, mid, m) < 1:
        raise DomainError(f"sizes must be positive, got {n}, {mid}, {m}")
    edges = [(0, i, 1, k) for i in range(n) for k in range(mid)]
    edges += [(1, k, 2, j) for k in range(mid) for j in range(m)]
    return LayeredDag.from_edges([n, mid, m], edges)


def make_bottleneck(n: int = 2, m: int = 2) -> LayeredDag:
    """Every input-output path passes through one middle vertex."""
    edges = [(0, i, 1, 0) for i in range(n)] + [(1, 0, 2, j) for j in range(m)]
    return LayeredDag.from_edges([n, 1, m], edges)


def make_path(length: int = 2) -> LayeredDag:
    """Single input joined to a single output by a path of ``length`` edges."""
    if length < 1:
        raise DomainError(f"path length must be positive, got {length}")
    return LayeredDag.from_edges([1] * (length + 1), [(layer, 0, layer + 1, 0) for layer in range(length)])


def make_parallel_paths(n: int = 2, length: int = 2) -> LayeredDag:
    """n disjoint paths, input i to output i; input i and output j != i are disconnected."""
    if n < 1 or length < 1:
        raise DomainError(f"need n >= 1 and length >= 1, got {n}, {length}")
    return LayeredDag.from_edges([n] * (length + 1),
                                 [(layer, i, layer + 1, i) for layer in range(length) for i in range(n)])


def remove_edge(g: LayeredDag, u: Tuple[int, int], v: Tuple[int, int]) -> LayeredDag:
    if (u, v) not in g.edges:
        raise DomainError(f"edge {u}->{v} is not in the graph")
    return LayeredDag(g.layers, tuple(e for e in g.edges if e != (u, v)))
