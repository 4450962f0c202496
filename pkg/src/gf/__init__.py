"""
Finite-field substrate: packed GF(2) vectors, prime fields and dense matrices.
"""

from .bitvector import BitVector, hamming_distance, popcount, support, weight
from .field import GF2, PrimeField, field_from_spec
from .matrix import Matrix, det, matrix_from_document, rank

__all__ = [
    'BitVector',
    'GF2',
    'Matrix',
    'PrimeField',
    'det',
    'field_from_spec',
    'hamming_distance',
    'matrix_from_document',
    'popcount',
    'rank',
    'support',
    'weight',
]
