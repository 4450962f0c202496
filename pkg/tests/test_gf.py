"""
Tests for the finite-field substrate, cross-checked against galois.
"""

import galois
import numpy as np
import pytest

from src.common.errors import CircuitFormatError, DomainError, NonSquare, ShapeMismatch
from src.gf import GF2, BitVector, Matrix, PrimeField, det, field_from_spec, hamming_distance, matrix_from_document, rank


class TestPrimeField:
    """Field construction and arithmetic."""

    def test_rejects_composites(self):
        with pytest.raises(DomainError):
            PrimeField(9)
        with pytest.raises(DomainError):
            PrimeField(4)

    def test_arithmetic(self, gf5):
        assert gf5.add(3, 4) == 2
        assert gf5.mul(3, 4) == 2
        assert gf5.inv(2) == 3
        assert gf5.neg(1) == 4
        with pytest.raises(DomainError):
            gf5.inv(0)

    def test_tags(self, gf5):
        assert GF2.tag() == 'gf2'
        assert gf5.tag() == {'prime': 5}
        assert field_from_spec('gf2') is GF2
        assert field_from_spec({'prime': 7}).q == 7


class TestBitVector:
    """Packed GF(2) vectors."""

    def test_string_roundtrip_and_weight(self):
        v = BitVector.from_string('1011')
        assert v.weight() == 3
        assert v.support() == frozenset({0, 2, 3})
        assert str(v) == '1011'

    def test_hamming_distance(self):
        u = BitVector.from_list([1, 0, 1, 0])
        v = BitVector.from_list([0, 0, 1, 1])
        assert hamming_distance(u, v) == 2


class TestMatrix:
    """Rank and determinant agree with galois."""

    @pytest.mark.parametrize('q', [2, 7])
    def test_rank_and_det_match_galois(self, q):
        rng = np.random.default_rng(11)
        field = PrimeField(q)
        oracle = galois.GF(q)
        for _ in range(20):
            size = int(rng.integers(3, 6))
            rows = rng.integers(0, q, size=(size, size))
            m = Matrix.from_rows(field, rows.tolist())
            reference = oracle(rows)
            assert rank(m) == int(np.linalg.matrix_rank(reference))
            assert det(m) == int(np.linalg.det(reference))

    def test_non_square_det(self, gf5):
        with pytest.raises(NonSquare):
            det(Matrix.from_rows(gf5, [[1, 2, 3], [4, 0, 1]]))

    def test_product_shape_mismatch(self, gf5):
        a = Matrix.from_rows(gf5, [[1, 2]])
        with pytest.raises(ShapeMismatch):
            a @ a

    def test_submatrix_keeps_field(self, gf5):
        m = Matrix.from_rows(gf5, [[1, 2, 3], [4, 0, 1]])
        sub = m.submatrix([1], [0, 2])
        assert sub.entries == ((4, 1),)
        assert sub.field == gf5

    def test_document(self):
        m = matrix_from_document({'field': {'prime': 3}, 'rows': [[1, 5], [2, 0]]})
        assert m.entries == ((1, 2), (2, 0))
        with pytest.raises(CircuitFormatError):
            matrix_from_document({'field': 'gf2', 'rows': []})
