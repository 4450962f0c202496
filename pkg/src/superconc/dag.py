"""
Layered DAGs for superconcentrator experiments.

Vertex (layer, index); edges run from a layer to any later layer. Layer 0 holds
the inputs, the last layer the outputs. Two file formats are read:

JSON ``{"layers": [s0, s1, ...], "edges": [[fl, fi, tl, ti], ...]}`` and an
edge-list text file whose first non-comment line is ``layers s0 s1 ...``
followed by one ``u v`` pair of global vertex ids per line.
"""

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, List, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.common.errors import CircuitFormatError, DomainError, UsageError
from src.common.logger import setup_logger
from src.common.utils import read_json, validate_file_exists, write_json

logger = setup_logger(__name__)

Vertex = Tuple[int, int]
Edge = Tuple[Vertex, Vertex]


@dataclass(frozen=True)
class LayeredDag:
    """Sorted, distinct edge list; parallel edges are collapsed on construction."""
    layers: Tuple[int, ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        if len(self.layers) < 2:
            raise DomainError(f"a layered DAG needs at least an input and an output layer, got {len(self.layers)}")
        if any(size < 1 for size in self.layers):
            raise DomainError(f"layer sizes must be positive, got {list(self.layers)}")
        for (fl, fi), (tl, ti) in self.edges:
            if not 0 <= fl < tl < len(self.layers):
                raise DomainError(f"edge ({fl},{fi})->({tl},{ti}) must go to a later layer")
            if not (0 <= fi < self.layers[fl] and 0 <= ti < self.layers[tl]):
                raise DomainError(f"edge ({fl},{fi})->({tl},{ti}) leaves the layer bounds")
        if list(self.edges) != sorted(set(self.edges)):
            raise DomainError("edges must be sorted and distinct")

    @classmethod
    def from_edges(cls, layers: Iterable[int], edges: Iterable[Iterable[int]]) -> 'LayeredDag':
        """Build from ``[fl, fi, tl, ti]`` quadruples, collapsing repeats."""
        normalized = set()
        for edge in edges:
            fl, fi, tl, ti = (int(v) for v in edge)
            normalized.add(((fl, fi), (tl, ti)))
        return cls(tuple(int(s) for s in layers), tuple(sorted(normalized)))

    @property
    def num_inputs(self) -> int:
        return self.layers[0]

    @property
    def num_outputs(self) -> int:
        return self.layers[-1]

    @property
    def last_layer(self) -> int:
        return len(self.layers) - 1

    @cached_property
    def offsets(self) -> Tuple[int, ...]:
        offsets = [0]
        for size in self.layers[:-1]:
            offsets.append(offsets[-1] + size)
        return tuple(offsets)

    def vertex_count(self) -> int:
        return sum(self.layers)

    def global_id(self, v: Vertex) -> int:
        return self.offsets[v[0]] + v[1]

    def vertex_of(self, gid: int) -> Vertex:
        if not 0 <= gid < self.vertex_count():
            raise DomainError(f"vertex id {gid} out of range [0, {self.vertex_count()})")
        layer = max(i for i, off in enumerate(self.offsets) if off <= gid)
        return layer, gid - self.offsets[layer]

    def vertices(self) -> List[Vertex]:
        return [(layer, i) for layer, size in enumerate(self.layers) for i in range(size)]

    @cached_property
    def predecessors(self) -> Dict[Vertex, Tuple[Vertex, ...]]:
        incoming: Dict[Vertex, List[Vertex]] = {v: [] for v in self.vertices()}
        for u, v in self.edges:
            incoming[v].append(u)
        return {v: tuple(us) for v, us in incoming.items()}

    def inputs(self) -> List[Vertex]:
        return [(0, i) for i in range(self.num_inputs)]

    def outputs(self) -> List[Vertex]:
        return [(self.last_layer, j) for j in range(self.num_outputs)]

    def depth(self) -> int:
        """Longest path length (in edges) from an input to an output; 0 when none exists."""
        longest: Dict[Vertex, int] = {}
        for v in self.vertices():
            if v[0] == 0:
                longest[v] = 0
                continue
            reachable = [longest[u] + 1 for u in self.predecessors[v] if longest[u] >= 0]
            longest[v] = max(reachable) if reachable else -1
        return max([longest[v] for v in self.outputs()] + [0])

    def to_json(self) -> dict:
        return {'layers': list(self.layers), 'edges': [[u[0], u[1], v[0], v[1]] for u, v in self.edges]}


class DagDocument(BaseModel):
    """JSON form of a LayeredDag."""
    model_config = ConfigDict(extra='forbid')

    layers: List[int] = Field(min_length=2)
    edges: List[List[int]]


def dag_from_document(data: object) -> LayeredDag:
    try:
        document = DagDocument.model_validate(data)
    except ValidationError as e:
        raise CircuitFormatError(f"invalid DAG document: {e}") from e
    for edge in document.edges:
        if len(edge) != 4:
            raise CircuitFormatError(f"edge must be [fromLayer, fromIdx, toLayer, toIdx], got {edge}")
    try:
        return LayeredDag.from_edges(document.layers, document.edges)
    except DomainError as e:
        raise CircuitFormatError(f"invalid DAG document: {e}") from e


def parse_edge_list(text: str) -> LayeredDag:
    """Parse the ``layers s0 s1 ...`` + ``u v`` text format; ``#`` starts a comment."""
    layers = None
    edges: List[Tuple[int, int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if layers is None:
            if tokens[0] != 'layers' or len(tokens) < 3:
                raise CircuitFormatError(f"line {number}: expected 'layers s0 s1 ...', got {raw!r}")
            try:
                layers = [int(t) for t in tokens[1:]]
            except ValueError as e:
                raise CircuitFormatError(f"line {number}: layer sizes must be integers") from e
            continue
        if len(tokens) != 2:
            raise CircuitFormatError(f"line {number}: expected 'u v', got {raw!r}")
        try:
            edges.append((int(tokens[0]), int(tokens[1])))
        except ValueError as e:
            raise CircuitFormatError(f"line {number}: vertex ids must be integers") from e
    if layers is None:
        raise CircuitFormatError("edge list has no 'layers' header")

    try:
        skeleton = LayeredDag(tuple(layers), ())
        quads = [(*skeleton.vertex_of(u), *skeleton.vertex_of(v)) for u, v in edges]
        return LayeredDag.from_edges(layers, quads)
    except DomainError as e:
        raise CircuitFormatError(f"invalid edge list: {e}") from e


def load_dag(path: Union[str, Path]) -> LayeredDag:
    """Read a DAG from ``.json`` or edge-list ``.txt``."""
    if str(path).endswith('.txt'):
        if not validate_file_exists(path):
            raise UsageError(f"cannot read {path}")
        dag = parse_edge_list(Path(path).read_text(encoding='utf-8'))
    else:
        dag = dag_from_document(read_json(path))
    logger.debug(f"Loaded DAG from {path}: layers {list(dag.layers)}, {len(dag.edges)} edges")
    return dag


def save_dag(dag: LayeredDag, path: Union[str, Path]) -> None:
    write_json(dag.to_json(), path)
    logger.info(f"Saved DAG (layers {list(dag.layers)}, {len(dag.edges)} edges) to {path}")
