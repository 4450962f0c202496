"""
Prime fields GF(q) with elements represented as Python ints in [0, q).
"""

from dataclasses import dataclass
from typing import Any, Dict, Literal, Union

import galois
import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.common.errors import DomainError

MAX_MODULUS = 2 ** 62


class PrimeTag(BaseModel):
    """JSON form ``{"prime": q}`` of an odd prime field."""
    model_config = ConfigDict(extra='forbid')

    prime: int = Field(gt=2)


FieldSpec = Union[Literal['gf2'], PrimeTag]


@dataclass(frozen=True)
class PrimeField:
    """
    GF(q) for q = 2 or an odd prime below 2^62.

    Primality is checked with galois.is_prime at construction.
    """
    q: int

    def __post_init__(self):
        if self.q == 2:
            return
        if self.q < 3 or self.q % 2 == 0 or self.q >= MAX_MODULUS:
            raise DomainError(f"field modulus must be 2 or an odd prime below 2^62, got {self.q}")
        if not galois.is_prime(self.q):
            raise DomainError(f"field modulus {self.q} is not prime")

    @property
    def is_binary(self) -> bool:
        return self.q == 2

    def reduce(self, value: int) -> int:
        return int(value) % self.q

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise DomainError("zero has no inverse")
        return pow(a, -1, self.q)

    def power(self, a: int, exponent: int) -> int:
        return pow(a, exponent, self.q)

    def random_element(self, rng: np.random.Generator) -> int:
        return int(rng.integers(0, self.q))

    def random_nonzero(self, rng: np.random.Generator) -> int:
        return int(rng.integers(1, self.q))

    def tag(self) -> Union[str, Dict[str, int]]:
        """JSON tag: "gf2" or {"prime": q}."""
        return 'gf2' if self.is_binary else {'prime': self.q}

    def __str__(self) -> str:
        return f"GF({self.q})"


GF2 = PrimeField(2)


def field_from_spec(spec: Any) -> PrimeField:
    """Build a field from a JSON tag ("gf2", {"prime": q}) or a modulus."""
    if isinstance(spec, PrimeField):
        return spec
    if spec == 'gf2' or spec == 2:
        return GF2
    if isinstance(spec, PrimeTag):
        return PrimeField(spec.prime)
    if isinstance(spec, dict) and 'prime' in spec:
        return PrimeField(int(spec['prime']))
    if isinstance(spec, int):
        return PrimeField(spec)
    raise DomainError(f"unrecognized field tag: {spec!r}")
