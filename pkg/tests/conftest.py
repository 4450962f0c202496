"""
Shared fixtures for the workbench test suite.
"""

import sys
from pathlib import Path

import pytest

# Add project root to Python path
project_root = Path(__file__).parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.circuit.linear_circuit import LinearCircuit
from src.gf.field import GF2, PrimeField


@pytest.fixture
def gf5() -> PrimeField:
    return PrimeField(5)


@pytest.fixture
def xor_circuit() -> LinearCircuit:
    """3 inputs, depth 2: g1_0 = x0 + x1, g1_1 = x1 + x2, outputs g2_0 = g1_0 + g1_1 and g2_1 = g1_0."""
    return LinearCircuit.build(
        GF2, 3,
        [
            [[[0, 0, 1], [0, 1, 1]], [[0, 1, 1], [0, 2, 1]]],
            [[[1, 0, 1], [1, 1, 1]], [[1, 0, 1]]],
        ],
        [[2, 0], [2, 1]],
    )


@pytest.fixture
def tmp_json(tmp_path):
    """Write a JSON document into tmp_path and return its path as a string."""
    import json

    def _write(name: str, data) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding='utf-8')
        return str(path)

    return _write
