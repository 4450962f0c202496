"""
Packed GF(2) vectors.

Bit i of ``bits`` is coordinate i, so xor and popcount run on whole words.
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List

from src.common.errors import DomainError, LengthMismatch


def popcount(word: int) -> int:
    return word.bit_count()


@dataclass(frozen=True)
class BitVector:
    """Element of {0,1}^length."""
    bits: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise DomainError(f"length must be nonnegative, got {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise DomainError(f"bits {self.bits:#x} do not fit in length {self.length}")

    @classmethod
    def zeros(cls, length: int) -> 'BitVector':
        return cls(0, length)

    @classmethod
    def unit(cls, length: int, index: int) -> 'BitVector':
        if not 0 <= index < length:
            raise DomainError(f"index {index} outside length {length}")
        return cls(1 << index, length)

    @classmethod
    def from_string(cls, text: str) -> 'BitVector':
        """Parse "1010"; the first character is coordinate 0."""
        bits = 0
        for position, char in enumerate(text.strip()):
            if char == '1':
                bits |= 1 << position
            elif char != '0':
                raise DomainError(f"not a bit string: {text!r}")
        return cls(bits, len(text.strip()))

    @classmethod
    def from_list(cls, values: Iterable[int]) -> 'BitVector':
        bits = 0
        length = 0
        for position, value in enumerate(values):
            if value not in (0, 1):
                raise DomainError(f"not a bit: {value!r}")
            bits |= value << position
            length = position + 1
        return cls(bits, length)

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> 'BitVector':
        bits = 0
        for index in support:
            if not 0 <= index < length:
                raise DomainError(f"index {index} outside length {length}")
            bits |= 1 << index
        return cls(bits, length)

    def weight(self) -> int:
        return popcount(self.bits)

    def support(self) -> FrozenSet[int]:
        return frozenset(i for i in range(self.length) if self.bits >> i & 1)

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self.length:
            raise IndexError(index)
        return self.bits >> index & 1

    def __len__(self) -> int:
        return self.length

    def __xor__(self, other: 'BitVector') -> 'BitVector':
        if self.length != other.length:
            raise LengthMismatch(f"lengths {self.length} and {other.length}")
        return BitVector(self.bits ^ other.bits, self.length)

    def to_list(self) -> List[int]:
        return [self.bits >> i & 1 for i in range(self.length)]

    def __str__(self) -> str:
        return ''.join(str(bit) for bit in self.to_list())

    def to_json(self) -> str:
        return str(self)


def weight(v: BitVector) -> int:
    return v.weight()


def support(v: BitVector) -> FrozenSet[int]:
    return v.support()


def hamming_distance(u: BitVector, v: BitVector) -> int:
    """Number of coordinates where u and v differ."""
    return (u ^ v).weight()
