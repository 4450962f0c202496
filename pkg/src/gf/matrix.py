"""
Dense matrices over GF(2) and GF(q) with exact determinant and rank.

GF(2) elimination runs on rows packed into ints; GF(q) uses modular
Gaussian elimination on Python ints.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.common.errors import CircuitFormatError, DomainError, NonSquare, ShapeMismatch

from .field import GF2, FieldSpec, PrimeField, field_from_spec


@dataclass(frozen=True)
class Matrix:
    """Row-major matrix with a field tag."""
    field: PrimeField
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise DomainError("matrix dimensions must be positive")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise DomainError("ragged matrix rows")
            for value in row:
                if not 0 <= value < self.field.q:
                    raise DomainError(f"entry {value} not reduced mod {self.field.q}")

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Sequence[Sequence[int]]) -> 'Matrix':
        return cls(field, tuple(tuple(int(v) % field.q for v in row) for row in rows))

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> 'Matrix':
        return cls(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> 'Matrix':
        return cls(field, tuple((0,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, position: Tuple[int, int]) -> int:
        i, j = position
        return self.entries[i][j]

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> 'Matrix':
        """M_{X,Y}; keeps the field tag."""
        return Matrix(self.field, tuple(tuple(self.entries[i][j] for j in col_indices)
                                        for i in row_indices))

    def __matmul__(self, other: 'Matrix') -> 'Matrix':
        if self.field != other.field:
            raise DomainError(f"fields differ: {self.field} and {other.field}")
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        q = self.field.q
        columns = list(zip(*other.entries))
        return Matrix(self.field, tuple(
            tuple(sum(a * b for a, b in zip(row, column)) % q for column in columns)
            for row in self.entries
        ))

    def packed_rows(self) -> List[int]:
        """GF(2) rows as ints, bit j = column j."""
        if not self.field.is_binary:
            raise DomainError("packed rows exist only over GF(2)")
        return [sum(bit << j for j, bit in enumerate(row)) for row in self.entries]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def to_json(self) -> Dict[str, Any]:
        return {'field': self.field.tag(), 'rows': [list(row) for row in self.entries]}


def _gf2_rank(rows: List[int]) -> int:
    rank = 0
    rows = [row for row in rows if row]
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        rows = [row ^ pivot if row & low else row for row in rows]
        rows = [row for row in rows if row]
    return rank


def _eliminate(m: Matrix) -> Tuple[int, int]:
    """Row-reduce over GF(q); returns (rank, determinant when square else 0)."""
    q = m.field.q
    work = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    rank = 0
    det = 1
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if work[r][col]), None)
        if pivot is None:
            det = 0
            continue
        if pivot != rank:
            work[rank], work[pivot] = work[pivot], work[rank]
            det = -det
        pivot_value = work[rank][col]
        det = det * pivot_value % q
        inverse = pow(pivot_value, -1, q)
        for r in range(rank + 1, rows):
            factor = work[r][col]
            if factor:
                scale = factor * inverse % q
                row_r, row_p = work[r], work[rank]
                for c in range(col, cols):
                    row_r[c] = (row_r[c] - scale * row_p[c]) % q
        rank += 1
        if rank == rows:
            break
    if rows != cols or rank < rows:
        det = 0
    return rank, det % q


def det(m: Matrix) -> int:
    """
    Determinant over the matrix's field.

    Raises:
        NonSquare: rows != cols
    """
    if m.rows != m.cols:
        raise NonSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    q = m.field.q
    if m.rows == 1:
        return m.entries[0][0]
    if m.rows == 2:
        (a, b), (c, d) = m.entries
        return (a * d - b * c) % q
    if m.field.is_binary:
        return int(_gf2_rank(m.packed_rows()) == m.rows)
    return _eliminate(m)[1]


def rank(m: Matrix) -> int:
    """Row rank over the matrix's field."""
    if m.field.is_binary:
        return _gf2_rank(m.packed_rows())
    return _eliminate(m)[0]


class MatrixDocument(BaseModel):
    """JSON matrix: ``{"field": "gf2" | {"prime": q}, "rows": [[...], ...]}``."""
    model_config = ConfigDict(extra='forbid')

    field: FieldSpec = 'gf2'
    rows: List[List[int]] = Field(min_length=1)


def matrix_from_document(data: Any) -> Matrix:
    """Validate and convert a JSON matrix document."""
    try:
        document = MatrixDocument.model_validate(data)
        return Matrix.from_rows(field_from_spec(document.field), document.rows)
    except (ValueError, DomainError) as e:
        raise CircuitFormatError(f"invalid matrix document: {e}") from e


__all__ = ['GF2', 'Matrix', 'MatrixDocument', 'det', 'matrix_from_document', 'rank']
