"""
Layered linear circuits, their transformations and file formats.
"""

from .linear_circuit import CircuitSkeleton, LinearCircuit, Wire, path_sum_entry
from .serialization import CircuitDocument, circuit_from_document, load_circuit, save_circuit, to_dot
from .transforms import (
    assign_random_coefficients,
    collapse_last_layer,
    merge_outputs,
    prune_dead_gates,
    side_by_side,
    stack,
)

__all__ = [
    'CircuitDocument',
    'CircuitSkeleton',
    'LinearCircuit',
    'Wire',
    'assign_random_coefficients',
    'circuit_from_document',
    'collapse_last_layer',
    'load_circuit',
    'merge_outputs',
    'path_sum_entry',
    'prune_dead_gates',
    'save_circuit',
    'side_by_side',
    'stack',
    'to_dot',
]
