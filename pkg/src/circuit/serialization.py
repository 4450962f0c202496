"""
JSON and DOT I/O for linear circuits.

JSON layout: ``{"field", "num_inputs", "layers", "outputs"}`` where a gate is
a list of ``[layer, index, coeff]`` triples and an output is ``[layer, index]``.
"""

from typing import Any, Dict, List

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.common.errors import CircuitFormatError, DomainError
from src.common.logger import setup_logger
from src.common.utils import read_json, write_json
from src.gf.field import FieldSpec, field_from_spec

from .linear_circuit import LinearCircuit

logger = setup_logger(__name__)


class CircuitDocument(BaseModel):
    """Validated JSON form of a LinearCircuit."""
    model_config = ConfigDict(extra='forbid')

    field: FieldSpec = 'gf2'
    num_inputs: int = Field(ge=1)
    layers: List[List[List[List[int]]]]
    outputs: List[List[int]]


def circuit_to_document(c: LinearCircuit) -> Dict[str, Any]:
    return {
        'field': c.field.tag(),
        'num_inputs': c.num_inputs,
        'layers': [[[list(w) for w in gate] for gate in layer] for layer in c.layers],
        'outputs': [list(ref) for ref in c.outputs],
    }


def circuit_from_document(data: Any) -> LinearCircuit:
    """
    Validate and build a circuit.

    Zero coefficients in the document are kept and mark the circuit non-canonical.

    Raises:
        CircuitFormatError: malformed JSON structure or inconsistent wiring
    """
    try:
        document = CircuitDocument.model_validate(data)
    except ValidationError as e:
        raise CircuitFormatError(f"invalid circuit document: {e.error_count()} error(s): {e}") from e

    for layer in document.layers:
        for gate in layer:
            for wire in gate:
                if len(wire) != 3:
                    raise CircuitFormatError(f"wire must be [layer, index, coeff], got {wire}")
    for ref in document.outputs:
        if len(ref) != 2:
            raise CircuitFormatError(f"output must be [layer, index], got {ref}")

    try:
        field = field_from_spec(document.field)
        has_zero = any(w[2] % field.q == 0 for layer in document.layers for gate in layer for w in gate)
        return LinearCircuit.build(field, document.num_inputs, document.layers, document.outputs,
                                   canonical=not has_zero)
    except DomainError as e:
        raise CircuitFormatError(f"invalid circuit document: {e}") from e


def load_circuit(path: str) -> LinearCircuit:
    circuit = circuit_from_document(read_json(path))
    logger.debug(f"Loaded circuit from {path}: depth {circuit.depth}, size {circuit.size()}")
    return circuit


def save_circuit(c: LinearCircuit, path: str) -> None:
    write_json(circuit_to_document(c), path)
    logger.info(f"Saved circuit ({c.num_inputs}->{c.num_outputs}, depth {c.depth}, "
                f"{c.size()} wires) to {path}")


def to_dot(c: LinearCircuit, name: str = 'circuit') -> str:
    """Graphviz digraph: one rank=same subgraph per layer, edges labelled by coefficient."""
    lines = [f'digraph "{name}" {{', '  rankdir=TB;']
    output_refs = set(c.outputs)
    for layer in range(c.depth + 1):
        lines.append(f'  subgraph "layer_{layer}" {{')
        lines.append('    rank=same;')
        for index in range(c.layer_size(layer)):
            label = f'x{index}' if layer == 0 else f'g{layer}_{index}'
            shape = 'doublecircle' if (layer, index) in output_refs else 'circle'
            lines.append(f'    "n{layer}_{index}" [label="{label}", shape={shape}];')
        lines.append('  }')
    for layer, gates in enumerate(c.layers, start=1):
        for index, gate in enumerate(gates):
            for w in gate:
                lines.append(f'  "n{w.layer}_{w.index}" -> "n{layer}_{index}" [label="{w.coeff}"];')
    for position, (layer, index) in enumerate(c.outputs):
        lines.append(f'  "y{position}" [shape=plaintext];')
        lines.append(f'  "n{layer}_{index}" -> "y{position}" [style=dashed];')
    lines.append('}')
    return '\n'.join(lines) + '\n'
