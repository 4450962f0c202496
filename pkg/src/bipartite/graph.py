"""
Bipartite graphs G = (V1 = [n_left], V2 = [n_right], E) with packed neighborhoods.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.common.errors import CircuitFormatError, DomainError
from src.common.utils import read_json, write_json


@dataclass(frozen=True)
class BipartiteGraph:
    """Per-left-vertex sorted neighbor lists; multi-edges are collapsed."""
    n_left: int
    n_right: int
    adjacency: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.n_left < 0 or self.n_right < 0:
            raise DomainError(f"vertex counts must be nonnegative, got {self.n_left}, {self.n_right}")
        if len(self.adjacency) != self.n_left:
            raise DomainError(f"{len(self.adjacency)} neighbor lists for {self.n_left} left vertices")
        for u, neighbors in enumerate(self.adjacency):
            if list(neighbors) != sorted(set(neighbors)):
                raise DomainError(f"neighbors of {u} must be sorted and distinct")
            if neighbors and not 0 <= neighbors[0] <= neighbors[-1] < self.n_right:
                raise DomainError(f"left vertex {u} has a neighbor outside [0, {self.n_right})")

    @classmethod
    def from_lists(cls, n_left: int, n_right: int, adjacency: Iterable[Iterable[int]]) -> 'BipartiteGraph':
        """Normalize arbitrary neighbor lists (sort, deduplicate)."""
        return cls(n_left, n_right, tuple(tuple(sorted(set(int(v) for v in row))) for row in adjacency))

    @classmethod
    def complete(cls, n_left: int, n_right: int) -> 'BipartiteGraph':
        return cls(n_left, n_right, tuple(tuple(range(n_right)) for _ in range(n_left)))

    @classmethod
    def empty(cls, n_left: int, n_right: int) -> 'BipartiteGraph':
        return cls(n_left, n_right, tuple(() for _ in range(n_left)))

    @cached_property
    def neighbor_masks(self) -> Tuple[int, ...]:
        """Neighborhood of each left vertex as an int bitmask over V2."""
        return tuple(sum(1 << v for v in row) for row in self.adjacency)

    def gamma_mask(self, left: Iterable[int]) -> int:
        mask = 0
        for u in left:
            mask |= self.neighbor_masks[u]
        return mask

    def gamma(self, left: Iterable[int]) -> List[int]:
        """Γ(X): union of the neighbor lists of X, sorted."""
        mask = self.gamma_mask(left)
        return [v for v in range(self.n_right) if mask >> v & 1]

    def edge_count(self) -> int:
        return sum(len(row) for row in self.adjacency)

    def left_degrees(self) -> np.ndarray:
        return np.array([len(row) for row in self.adjacency], dtype=np.int64)

    def right_degrees(self) -> np.ndarray:
        flat = [v for row in self.adjacency for v in row]
        return np.bincount(np.array(flat, dtype=np.int64), minlength=self.n_right)

    def to_json(self) -> dict:
        return {'n_left': self.n_left, 'n_right': self.n_right, 'adj': [list(row) for row in self.adjacency]}


class GraphDocument(BaseModel):
    """JSON form ``{n_left, n_right, adj: [[...], ...]}``."""
    model_config = ConfigDict(extra='forbid')

    n_left: int = Field(ge=0)
    n_right: int = Field(ge=0)
    adj: List[List[int]]


def graph_from_document(data: Any) -> BipartiteGraph:
    try:
        document = GraphDocument.model_validate(data)
        return BipartiteGraph.from_lists(document.n_left, document.n_right, document.adj)
    except (ValidationError, DomainError) as e:
        raise CircuitFormatError(f"invalid bipartite graph document: {e}") from e


def load_graph(path: str) -> BipartiteGraph:
    return graph_from_document(read_json(path))


def save_graph(g: BipartiteGraph, path: str) -> str:
    return write_json(g.to_json(), path)
