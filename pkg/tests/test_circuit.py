"""
Tests for linear circuits: evaluation, path sums, transformations and file formats.
"""

import numpy as np
import pytest

from src.builders.base_pgc import sample_skeleton
from src.circuit import (
    LinearCircuit,
    assign_random_coefficients,
    circuit_from_document,
    collapse_last_layer,
    load_circuit,
    merge_outputs,
    path_sum_entry,
    prune_dead_gates,
    save_circuit,
    side_by_side,
    stack,
    to_dot,
)
from src.common.errors import (
    ArityMismatch,
    CircuitFormatError,
    DepthTooSmall,
    DomainError,
    FieldMismatch,
    PathBudgetExceeded,
    ShapeMismatch,
)
from src.gf import GF2, BitVector, PrimeField


def _random_circuit(seed: int, field_: PrimeField) -> LinearCircuit:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    skeleton = sample_skeleton(n, int(rng.integers(1, 6)), int(rng.integers(2, 4)), 2, rng)
    return assign_random_coefficients(skeleton, field_, rng)


class TestEvaluation:
    """Forward evaluation and the generator matrix."""

    def test_xor_circuit_values(self, xor_circuit):
        assert xor_circuit.eval([1, 0, 0]) == (1, 1)
        assert xor_circuit.eval([1, 1, 0]) == (1, 0)
        assert xor_circuit.eval([0, 1, 1]) == (1, 1)
        assert xor_circuit.generator_rows == ((1, 1), (0, 1), (1, 0))
        assert xor_circuit.depth == 2
        assert xor_circuit.size() == 7

    def test_packed_evaluation_agrees(self, xor_circuit):
        for x in range(8):
            bits = [x >> i & 1 for i in range(3)]
            packed = xor_circuit.encode_bits(x)
            assert [packed >> j & 1 for j in range(2)] == list(xor_circuit.eval(bits))

    def test_packed_input_goes_through_eval(self, xor_circuit):
        for x in range(8):
            packed = xor_circuit.encode_bits(x)
            assert xor_circuit.eval(BitVector(x, 3)) == tuple(packed >> j & 1 for j in range(2))
        with pytest.raises(ArityMismatch):
            xor_circuit.eval(BitVector(1, 2))
        assert not hasattr(xor_circuit, 'eval_bits')

    def test_arity_and_field_checks(self, xor_circuit):
        with pytest.raises(ArityMismatch):
            xor_circuit.eval([1, 0])
        with pytest.raises(FieldMismatch):
            xor_circuit.eval([1, 2, 0])

    def test_build_canonicalizes_zero_coefficients(self, gf5):
        c = LinearCircuit.build(gf5, 2, [[[[0, 0, 5], [0, 1, 3]]]], [[1, 0]])
        assert c.canonical
        assert c.size() == 1
        assert c.eval([4, 1]) == (3,)

    def test_empty_layer_rejected(self):
        with pytest.raises(DomainError):
            LinearCircuit.build(GF2, 2, [[]], [[0, 0]])

    def test_backward_wire_rejected(self):
        with pytest.raises(DomainError):
            LinearCircuit.build(GF2, 2, [[[[1, 0, 1]]]], [[1, 0]])


class TestPathSums:
    """The explicit path expansion agrees with forward accumulation."""

    def test_xor_circuit(self, xor_circuit):
        for i in range(3):
            for j in range(2):
                assert path_sum_entry(xor_circuit, i, j) == xor_circuit.generator_rows[i][j]

    @pytest.mark.parametrize('q', [2, 7])
    def test_random_circuits(self, q):
        field_ = PrimeField(q)
        for seed in range(10):
            c = _random_circuit(seed, field_)
            for i in range(c.num_inputs):
                for j in range(c.num_outputs):
                    assert path_sum_entry(c, i, j) == c.generator_rows[i][j]

    def test_path_cap(self, xor_circuit):
        with pytest.raises(PathBudgetExceeded):
            path_sum_entry(xor_circuit, 0, 0, max_paths=1)


class TestTransforms:
    """Transformations preserve or combine the computed maps."""

    def test_collapse_preserves_map(self, xor_circuit):
        collapsed = collapse_last_layer(xor_circuit)
        assert collapsed.depth == 1
        assert collapsed.generator_rows == xor_circuit.generator_rows
        assert collapsed.size() == 4

    @pytest.mark.parametrize('q', [2, 7])
    def test_collapse_random(self, q):
        for seed in range(10):
            c = _random_circuit(seed, PrimeField(q))
            assert collapse_last_layer(c).generator_matrix() == c.generator_matrix()

    def test_collapse_needs_depth_two(self):
        with pytest.raises(DepthTooSmall):
            collapse_last_layer(LinearCircuit.identity(GF2, 3))

    def test_stack_is_matrix_product(self, gf5):
        top = LinearCircuit.build(gf5, 2, [[[[0, 0, 1], [0, 1, 2]], [[0, 1, 3]]]], [[1, 0], [1, 1]])
        bottom = LinearCircuit.build(gf5, 2, [[[[0, 0, 4]], [[0, 0, 1], [0, 1, 1]]]], [[1, 0], [1, 1]])
        stacked = stack(top, bottom)
        assert stacked.depth == top.depth + bottom.depth
        assert stacked.size() == top.size() + bottom.size()
        assert stacked.generator_matrix() == top.generator_matrix() @ bottom.generator_matrix()

    def test_stack_shape_mismatch(self, xor_circuit):
        with pytest.raises(ShapeMismatch):
            stack(xor_circuit, xor_circuit)

    def test_merge_outputs_is_linear_combination(self, gf5):
        a = LinearCircuit.build(gf5, 2, [[[[0, 0, 1], [0, 1, 1]]]], [[1, 0]])
        b = LinearCircuit.build(gf5, 2, [[[[0, 1, 2]]]], [[1, 0]])
        merged = merge_outputs([a, b], [[1], [3]])
        for x in ([1, 0], [0, 1], [2, 3]):
            expected = (a.eval(x)[0] + 3 * b.eval(x)[0]) % 5
            assert merged.eval(x) == (expected,)

    def test_side_by_side_concatenates(self, xor_circuit):
        both = side_by_side([xor_circuit, LinearCircuit.identity(GF2, 3)])
        assert both.num_outputs == 5
        assert both.eval([1, 1, 0]) == (1, 0, 1, 1, 0)

    def test_prune_drops_dead_gates(self):
        c = LinearCircuit.build(GF2, 2, [[[[0, 0, 1]], [[0, 1, 1]]]], [[1, 0]])
        pruned = prune_dead_gates(c)
        assert pruned.size() == 1
        assert pruned.generator_rows == c.generator_rows


class TestSerialization:
    """JSON and DOT formats."""

    def test_save_and_load(self, xor_circuit, tmp_path):
        path = tmp_path / 'xor.json'
        save_circuit(xor_circuit, str(path))
        loaded = load_circuit(str(path))
        assert loaded == xor_circuit

    def test_document_keeps_zero_coefficients(self):
        c = circuit_from_document({'field': {'prime': 3}, 'num_inputs': 1,
                                   'layers': [[[[0, 0, 0]], [[0, 0, 2]]]], 'outputs': [[1, 1]]})
        assert not c.canonical
        assert c.size() == 2
        assert c.eval([1]) == (2,)

    def test_malformed_documents(self):
        with pytest.raises(CircuitFormatError):
            circuit_from_document({'num_inputs': 2, 'layers': [[[[0, 0]]]], 'outputs': [[1, 0]]})
        with pytest.raises(CircuitFormatError):
            circuit_from_document({'num_inputs': 2, 'layers': [[[[0, 5, 1]]]], 'outputs': [[1, 0]]})
        with pytest.raises(CircuitFormatError):
            circuit_from_document({'num_inputs': 2, 'layers': [], 'outputs': [], 'extra': 1})

    def test_dot_layout(self, xor_circuit):
        text = to_dot(xor_circuit, name='xor')
        assert text.startswith('digraph "xor"')
        assert text.count('rank=same') == 3
        assert '"n1_0" -> "n2_0"' in text
