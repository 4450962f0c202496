"""
Layered linear circuits over GF(2) or GF(q).

Layer 0 holds the inputs; every gate of layer L sums coefficient-weighted
values of gates in strictly earlier layers. Outputs are references
(layer, index) and may alias inputs or internal gates.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from src.common.errors import ArityMismatch, DomainError, FieldMismatch, PathBudgetExceeded
from src.common.logger import setup_logger
from src.gf.bitvector import BitVector
from src.gf.field import PrimeField
from src.gf.matrix import Matrix

from config.settings import workbench_config

logger = setup_logger(__name__)

SourceRef = Tuple[int, int]


class Wire(NamedTuple):
    layer: int
    index: int
    coeff: int


Gate = Tuple[Wire, ...]


def _check_topology(num_inputs: int, layer_sizes: Sequence[int],
                    sources: Sequence[Sequence[Sequence[SourceRef]]],
                    outputs: Sequence[SourceRef]) -> None:
    if num_inputs < 1:
        raise DomainError(f"a circuit needs at least one input, got {num_inputs}")
    sizes = [num_inputs] + list(layer_sizes)
    for position, layer in enumerate(sources, start=1):
        if not layer:
            raise DomainError(f"layer {position} is empty")
        for gate_index, gate in enumerate(layer):
            for src_layer, src_index in gate:
                if not 0 <= src_layer < position:
                    raise DomainError(
                        f"gate ({position}, {gate_index}) reads layer {src_layer}, not strictly earlier")
                if not 0 <= src_index < sizes[src_layer]:
                    raise DomainError(f"gate ({position}, {gate_index}) reads missing ({src_layer}, {src_index})")
    for out_layer, out_index in outputs:
        if not 0 <= out_layer < len(sizes) or not 0 <= out_index < sizes[out_layer]:
            raise DomainError(f"output refers to missing gate ({out_layer}, {out_index})")


@dataclass(frozen=True)
class CircuitSkeleton:
    """Wiring of a probabilistic circuit whose coefficients are not yet drawn."""
    num_inputs: int
    layers: Tuple[Tuple[Tuple[SourceRef, ...], ...], ...]
    outputs: Tuple[SourceRef, ...]

    def __post_init__(self):
        _check_topology(self.num_inputs, [len(layer) for layer in self.layers],
                        self.layers, self.outputs)

    @property
    def depth(self) -> int:
        return len(self.layers)

    def wire_count(self) -> int:
        return sum(len(gate) for layer in self.layers for gate in layer)


@dataclass(frozen=True)
class LinearCircuit:
    """
    Immutable layered linear circuit.

    ``canonical`` circuits store no zero coefficients; size() counts stored wires.
    """
    field: PrimeField
    num_inputs: int
    layers: Tuple[Tuple[Gate, ...], ...]
    outputs: Tuple[SourceRef, ...]
    canonical: bool = True

    def __post_init__(self):
        _check_topology(
            self.num_inputs,
            [len(layer) for layer in self.layers],
            [[[(w.layer, w.index) for w in gate] for gate in layer] for layer in self.layers],
            self.outputs,
        )
        q = self.field.q
        for layer in self.layers:
            for gate in layer:
                for wire in gate:
                    if not 0 <= wire.coeff < q:
                        raise DomainError(f"coefficient {wire.coeff} not reduced mod {q}")
                    if self.canonical and wire.coeff == 0:
                        raise DomainError("canonical circuits store no zero coefficients")

    @classmethod
    def build(cls, field: PrimeField, num_inputs: int,
              layers: Sequence[Sequence[Sequence[Sequence[int]]]],
              outputs: Sequence[Sequence[int]], canonical: bool = True) -> 'LinearCircuit':
        """Build from nested lists of [layer, index, coeff] triples, reducing coefficients."""
        built = tuple(
            tuple(tuple(Wire(int(w[0]), int(w[1]), int(w[2]) % field.q) for w in gate) for gate in layer)
            for layer in layers
        )
        refs = tuple((int(o[0]), int(o[1])) for o in outputs)
        has_zero = any(w.coeff == 0 for layer in built for gate in layer for w in gate)
        circuit = cls(field, num_inputs, built, refs, canonical=False)
        if canonical and has_zero:
            return circuit.canonicalize()
        return cls(field, num_inputs, built, refs, canonical=canonical and not has_zero)

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> 'LinearCircuit':
        """One layer, gate i wired to input i with coefficient 1."""
        layer = tuple((Wire(0, i, 1),) for i in range(n))
        return cls(field, n, (layer,), tuple((1, i) for i in range(n)))

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def num_outputs(self) -> int:
        return len(self.outputs)

    def layer_size(self, layer: int) -> int:
        return self.num_inputs if layer == 0 else len(self.layers[layer - 1])

    def gate(self, ref: SourceRef) -> Gate:
        return self.layers[ref[0] - 1][ref[1]]

    def size(self) -> int:
        return sum(len(gate) for layer in self.layers for gate in layer)

    def output_fanin(self) -> int:
        """Largest fanin among output gates (inputs aliased as outputs count as 1)."""
        return max((1 if layer == 0 else len(self.gate((layer, index)))
                    for layer, index in self.outputs), default=0)

    def max_fanin(self, layer: int) -> int:
        return max((len(gate) for gate in self.layers[layer - 1]), default=0)

    def skeleton(self) -> CircuitSkeleton:
        return CircuitSkeleton(
            self.num_inputs,
            tuple(tuple(tuple((w.layer, w.index) for w in gate) for gate in layer) for layer in self.layers),
            self.outputs,
        )

    def canonicalize(self) -> 'LinearCircuit':
        """Merge parallel wires and drop zero coefficients."""
        q = self.field.q
        layers = []
        for layer in self.layers:
            gates = []
            for gate in layer:
                merged: Dict[SourceRef, int] = {}
                for wire in gate:
                    key = (wire.layer, wire.index)
                    merged[key] = (merged.get(key, 0) + wire.coeff) % q
                gates.append(tuple(Wire(src[0], src[1], coeff)
                                   for src, coeff in sorted(merged.items()) if coeff))
            layers.append(tuple(gates))
        return LinearCircuit(self.field, self.num_inputs, tuple(layers), self.outputs, canonical=True)

    @cached_property
    def _columns(self) -> List[List[Union[int, Tuple[int, ...]]]]:
        """
        Linear form of every gate over the inputs, layer by layer.

        GF(2): int masks over input positions. GF(q): tuples of length num_inputs.
        """
        n = self.num_inputs
        q = self.field.q
        if self.field.is_binary:
            columns: List[List] = [[1 << i for i in range(n)]]
            for layer in self.layers:
                current = []
                for gate in layer:
                    mask = 0
                    for wire in gate:
                        if wire.coeff:
                            mask ^= columns[wire.layer][wire.index]
                    current.append(mask)
                columns.append(current)
            return columns

        columns = [[tuple(int(i == j) for j in range(n)) for i in range(n)]]
        for layer in self.layers:
            current = []
            for gate in layer:
                acc = [0] * n
                for wire in gate:
                    if wire.coeff:
                        source = columns[wire.layer][wire.index]
                        for position, value in enumerate(source):
                            if value:
                                acc[position] += wire.coeff * value
                current.append(tuple(v % q for v in acc))
            columns.append(current)
        return columns

    def output_columns(self) -> List[Union[int, Tuple[int, ...]]]:
        return [self._columns[layer][index] for layer, index in self.outputs]

    @cached_property
    def row_masks(self) -> Tuple[int, ...]:
        """GF(2) only: row i of the generator matrix packed over the outputs."""
        if not self.field.is_binary:
            raise DomainError("row masks exist only over GF(2)")
        masks = [0] * self.num_inputs
        for j, column in enumerate(self.output_columns()):
            remaining = column
            while remaining:
                low = remaining & -remaining
                masks[low.bit_length() - 1] |= 1 << j
                remaining ^= low
        return tuple(masks)

    @cached_property
    def generator_rows(self) -> Tuple[Tuple[int, ...], ...]:
        """Generator matrix rows as tuples of field elements."""
        columns = self.output_columns()
        if self.field.is_binary:
            return tuple(tuple(column >> i & 1 for column in columns) for i in range(self.num_inputs))
        return tuple(tuple(column[i] for column in columns) for i in range(self.num_inputs))

    def encode_bits(self, x: int) -> int:
        """GF(2) fast path: packed input word to packed output word."""
        word = 0
        masks = self.row_masks
        while x:
            low = x & -x
            word ^= masks[low.bit_length() - 1]
            x ^= low
        return word

    def _coerce_input(self, x: Union[BitVector, Sequence[int]]) -> List[int]:
        values = x.to_list() if isinstance(x, BitVector) else [int(v) for v in x]
        if len(values) != self.num_inputs:
            raise ArityMismatch(f"expected {self.num_inputs} inputs, got {len(values)}")
        for value in values:
            if not 0 <= value < self.field.q:
                raise FieldMismatch(f"input value {value} is not an element of {self.field}")
        return values

    def eval(self, x: Union[BitVector, Sequence[int]]) -> Tuple[int, ...]:
        """Forward accumulation layer by layer; returns the output vector."""
        values: List[List[int]] = [self._coerce_input(x)]
        q = self.field.q
        for layer in self.layers:
            values.append([sum(w.coeff * values[w.layer][w.index] for w in gate) % q for gate in layer])
        return tuple(values[layer][index] for layer, index in self.outputs)

    def generator_matrix(self) -> Matrix:
        """num_inputs x num_outputs matrix whose row i is eval(e_i)."""
        return Matrix(self.field, self.generator_rows)

    def to_json(self) -> dict:
        from .serialization import circuit_to_document
        return circuit_to_document(self)


def path_sum_entry(c: LinearCircuit, i: int, j: int, max_paths: Optional[int] = None) -> int:
    """
    Sum over all paths from input i to output j of the product of wire coefficients.

    Explicit depth-first enumeration; an oracle for generator_matrix at desk scale.

    Raises:
        PathBudgetExceeded: more than ``max_paths`` complete paths were explored
    """
    if not 0 <= i < c.num_inputs or not 0 <= j < c.num_outputs:
        raise DomainError(f"indices ({i}, {j}) outside {c.num_inputs}x{c.num_outputs}")
    cap = workbench_config.path_cap if max_paths is None else max_paths
    q = c.field.q
    total = 0
    paths = 0
    stack: List[Tuple[SourceRef, int]] = [(c.outputs[j], 1)]
    while stack:
        (layer, index), product = stack.pop()
        if layer == 0:
            paths += 1
            if paths > cap:
                raise PathBudgetExceeded(cap)
            if index == i:
                total = (total + product) % q
            continue
        for wire in c.layers[layer - 1][index]:
            stack.append(((wire.layer, wire.index), product * wire.coeff % q))
    return total
