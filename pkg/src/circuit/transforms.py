"""
Circuit transformations: merge, stack, collapse, random coefficients, pruning.

All operations return new circuits; inputs are never modified.
"""

from typing import Dict, List, Sequence, Set, Union

import numpy as np

from src.common.errors import DepthTooSmall, DomainError, ShapeMismatch
from src.common.logger import setup_logger
from src.gf.field import PrimeField

from .linear_circuit import CircuitSkeleton, Gate, LinearCircuit, SourceRef, Wire

logger = setup_logger(__name__)


def _as_rng(seed: Union[int, np.random.Generator, None]) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def assign_random_coefficients(s: CircuitSkeleton, field: PrimeField,
                               seed: Union[int, np.random.Generator, None]) -> LinearCircuit:
    """
    Draw i.i.d. uniform coefficients for every wire of a skeleton.

    Wires drawing 0 are deleted, so the result is canonical.
    """
    rng = _as_rng(seed)
    draws = rng.integers(0, field.q, size=s.wire_count()) if s.wire_count() else np.zeros(0, dtype=np.int64)
    position = 0
    layers = []
    for layer in s.layers:
        gates = []
        for gate in layer:
            merged: Dict[SourceRef, int] = {}
            for src in gate:
                merged[src] = (merged.get(src, 0) + int(draws[position])) % field.q
                position += 1
            gates.append(tuple(Wire(src[0], src[1], coeff) for src, coeff in merged.items() if coeff))
        layers.append(tuple(gates))
    return LinearCircuit(field, s.num_inputs, tuple(layers), s.outputs)


def prune_dead_gates(c: LinearCircuit) -> LinearCircuit:
    """Remove gates no output depends on, then drop layers left empty."""
    live: List[Set[int]] = [set() for _ in range(c.depth + 1)]
    frontier = [ref for ref in c.outputs]
    while frontier:
        layer, index = frontier.pop()
        if layer == 0 or index in live[layer]:
            continue
        live[layer].add(index)
        frontier.extend((w.layer, w.index) for w in c.layers[layer - 1][index])

    new_layer_of: Dict[int, int] = {0: 0}
    index_maps: List[Dict[int, int]] = [{i: i for i in range(c.num_inputs)}]
    kept_layers = []
    for layer in range(1, c.depth + 1):
        keep = sorted(live[layer])
        index_maps.append({old: new for new, old in enumerate(keep)})
        if keep:
            new_layer_of[layer] = len(kept_layers) + 1
            kept_layers.append([c.layers[layer - 1][old] for old in keep])

    def remap(ref: SourceRef) -> SourceRef:
        return new_layer_of[ref[0]], index_maps[ref[0]][ref[1]]

    layers = tuple(
        tuple(tuple(Wire(*remap((w.layer, w.index)), w.coeff) for w in gate) for gate in layer)
        for layer in kept_layers
    )
    return LinearCircuit(c.field, c.num_inputs, layers, tuple(remap(ref) for ref in c.outputs),
                         canonical=c.canonical)


def _check_same_shape(circuits: Sequence[LinearCircuit]) -> None:
    first = circuits[0]
    for other in circuits[1:]:
        if other.field != first.field:
            raise ShapeMismatch(f"fields differ: {first.field} and {other.field}")
        if other.num_inputs != first.num_inputs or other.num_outputs != first.num_outputs:
            raise ShapeMismatch(
                f"shapes differ: {first.num_inputs}->{first.num_outputs} and "
                f"{other.num_inputs}->{other.num_outputs}")


def merge_outputs(circuits: Sequence[LinearCircuit],
                  coeffs: Sequence[Sequence[int]]) -> LinearCircuit:
    """
    Output j of the result is sum_i coeffs[i][j] * (output j of circuit i).

    Members are laid side by side over shared inputs; each output gate's
    wires are merged into one shared gate in the deepest layer.
    """
    if len(circuits) < 2:
        raise ShapeMismatch(f"merging needs at least two circuits, got {len(circuits)}")
    _check_same_shape(circuits)
    if len(coeffs) != len(circuits) or any(len(row) != circuits[0].num_outputs for row in coeffs):
        raise ShapeMismatch("one coefficient per circuit and output is required")

    field = circuits[0].field
    q = field.q
    depth = max(c.depth for c in circuits)

    offsets: List[Dict[int, int]] = []
    combined: List[List[Gate]] = [[] for _ in range(depth)]
    for c in circuits:
        member_offsets = {0: 0}
        for layer in range(1, c.depth + 1):
            member_offsets[layer] = len(combined[layer - 1])
        offsets.append(member_offsets)
        for layer in range(1, c.depth + 1):
            shift = member_offsets
            combined[layer - 1].extend(
                tuple(Wire(w.layer, w.index + shift[w.layer], w.coeff) for w in gate)
                for gate in c.layers[layer - 1]
            )

    merged_gates: List[Gate] = []
    for j in range(circuits[0].num_outputs):
        acc: Dict[SourceRef, int] = {}
        for member, c in enumerate(circuits):
            a = int(coeffs[member][j]) % q
            if a == 0:
                continue
            layer, index = c.outputs[j]
            if layer == 0:
                acc[(0, index)] = (acc.get((0, index), 0) + a) % q
                continue
            for w in c.layers[layer - 1][index]:
                key = (w.layer, w.index + offsets[member][w.layer])
                acc[key] = (acc.get(key, 0) + a * w.coeff) % q
        merged_gates.append(tuple(Wire(src[0], src[1], coeff) for src, coeff in sorted(acc.items()) if coeff))

    base = len(combined[depth - 1])
    combined[depth - 1].extend(merged_gates)
    outputs = tuple((depth, base + j) for j in range(len(merged_gates)))
    merged = LinearCircuit(field, circuits[0].num_inputs, tuple(tuple(layer) for layer in combined),
                           outputs, canonical=all(c.canonical for c in circuits))
    return prune_dead_gates(merged)


def stack(top: LinearCircuit, bottom: LinearCircuit) -> LinearCircuit:
    """Function composition bottom(top(x)); depth and size add."""
    if top.field != bottom.field:
        raise ShapeMismatch(f"fields differ: {top.field} and {bottom.field}")
    if top.num_outputs != bottom.num_inputs:
        raise ShapeMismatch(f"top has {top.num_outputs} outputs, bottom has {bottom.num_inputs} inputs")

    shift = top.depth

    def remap(layer: int, index: int) -> SourceRef:
        if layer == 0:
            return top.outputs[index]
        return layer + shift, index

    lower = tuple(
        tuple(tuple(Wire(*remap(w.layer, w.index), w.coeff) for w in gate) for gate in layer)
        for layer in bottom.layers
    )
    outputs = tuple(remap(*ref) for ref in bottom.outputs)
    return LinearCircuit(top.field, top.num_inputs, top.layers + lower, outputs,
                         canonical=top.canonical and bottom.canonical)


def collapse_last_layer(c: LinearCircuit) -> LinearCircuit:
    """
    Substitute each final-layer gate's wires through its penultimate-layer sources.

    Coefficients multiply, parallel wires merge, zero results are dropped;
    depth decreases by one and the computed map is unchanged.
    """
    if c.depth < 2:
        raise DepthTooSmall(f"collapse needs depth >= 2, got {c.depth}")
    q = c.field.q
    last = c.depth
    penultimate = c.layers[last - 2]

    collapsed: List[Gate] = []
    for gate in c.layers[last - 1]:
        acc: Dict[SourceRef, int] = {}
        for wire in gate:
            if wire.layer == last - 1:
                for inner in penultimate[wire.index]:
                    key = (inner.layer, inner.index)
                    acc[key] = (acc.get(key, 0) + wire.coeff * inner.coeff) % q
            else:
                key = (wire.layer, wire.index)
                acc[key] = (acc.get(key, 0) + wire.coeff) % q
        collapsed.append(tuple(Wire(src[0], src[1], coeff) for src, coeff in sorted(acc.items()) if coeff))

    # penultimate gates survive only when an output aliases them
    kept = sorted({index for layer, index in c.outputs if layer == last - 1})
    kept_index = {old: new for new, old in enumerate(kept)}
    merged_layer = tuple(penultimate[old] for old in kept) + tuple(collapsed)

    def remap(ref: SourceRef) -> SourceRef:
        layer, index = ref
        if layer == last:
            return last - 1, len(kept) + index
        if layer == last - 1:
            return last - 1, kept_index[index]
        return ref

    return LinearCircuit(c.field, c.num_inputs, c.layers[:last - 2] + (merged_layer,),
                         tuple(remap(ref) for ref in c.outputs), canonical=c.canonical)


def side_by_side(circuits: Sequence[LinearCircuit]) -> LinearCircuit:
    """
    Parallel composition over shared inputs: outputs are concatenated.

    Used to place a bundle of detectors in one layer.
    """
    if not circuits:
        raise DomainError("side_by_side needs at least one circuit")
    first = circuits[0]
    for other in circuits[1:]:
        if other.field != first.field or other.num_inputs != first.num_inputs:
            raise ShapeMismatch("side_by_side needs a shared field and input count")
    depth = max(c.depth for c in circuits)
    combined: List[List[Gate]] = [[] for _ in range(depth)]
    outputs: List[SourceRef] = []
    for c in circuits:
        shift = {0: 0}
        for layer in range(1, c.depth + 1):
            shift[layer] = len(combined[layer - 1])
        for layer in range(1, c.depth + 1):
            combined[layer - 1].extend(
                tuple(Wire(w.layer, w.index + shift[w.layer], w.coeff) for w in gate)
                for gate in c.layers[layer - 1]
            )
        outputs.extend((layer, index + shift[layer]) for layer, index in c.outputs)
    return LinearCircuit(first.field, first.num_inputs, tuple(tuple(layer) for layer in combined),
                         tuple(outputs), canonical=all(c.canonical for c in circuits))
