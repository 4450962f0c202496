"""
Constant table and scale profiles for the constructive pipeline.

The literal constants (32n outputs, weight 4n) make exhaustive verification
infeasible beyond toy sizes, so builders run against a ScaleProfile that keeps
the ratios the lemmas rely on.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, ValidationError, field_serializer, field_validator

from src.codeprops.models import PgcParams
from src.common.errors import CircuitFormatError
from src.common.utils import read_json

from config.settings import workbench_config


def _as_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


class ConstantTable(BaseModel):
    """Absolute constants of the upper-bound induction, as exact rationals."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True, extra='forbid')

    c0: Fraction = Fraction(6)
    c1: Fraction = Fraction(1)
    c2: Fraction = Fraction(1)
    c3: Fraction = Fraction(1)
    c4: Fraction = Fraction(1)
    c5: Fraction = Fraction(1)
    c6: Fraction = Fraction(1)
    D1: Fraction = Fraction(1)
    D2: Fraction = Fraction(1)

    @field_validator('*', mode='before')
    @classmethod
    def _parse(cls, value: Any) -> Fraction:
        try:
            return _as_fraction(value)
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational constant: {value!r}") from e

    @field_validator('*')
    @classmethod
    def _positive(cls, value: Fraction) -> Fraction:
        if value <= 0:
            raise ValueError(f"constants must be positive, got {value}")
        return value

    @field_validator('c0')
    @classmethod
    def _condenser_floor(cls, value: Fraction) -> Fraction:
        if value < 6:
            raise ValueError(f"c0 must be at least 6, got {value}")
        return value

    @field_serializer('*')
    def _dump(self, value: Fraction) -> str:
        return str(value)


def load_constants(path: str) -> ConstantTable:
    try:
        return ConstantTable.model_validate(read_json(path))
    except ValidationError as e:
        raise CircuitFormatError(f"invalid constant table {path}: {e}") from e


@dataclass(frozen=True)
class ScaleProfile:
    """
    PGC shape: n inputs, output_factor * n outputs, weight floor weight_factor * n.

    The merge step keeps 1/8 of the floor before the booster restores it.
    """
    name: str
    output_factor: int
    weight_factor: Fraction
    merge_floor_ratio: Fraction = Fraction(1, 8)

    def n_out(self, n: int) -> int:
        return self.output_factor * n

    def w_min(self, n: int) -> Fraction:
        return self.weight_factor * n

    def merge_floor(self, n: int) -> Fraction:
        return self.merge_floor_ratio * self.w_min(n)

    def pgc_params(self, n: int, r: float, s: float) -> PgcParams:
        return PgcParams(n_in=n, n_out=self.n_out(n), r=float(r), s=float(s), w_min=float(self.w_min(n)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'output_factor': self.output_factor,
            'weight_factor': str(self.weight_factor),
            'merge_floor_ratio': str(self.merge_floor_ratio),
        }


LITERAL_PROFILE = ScaleProfile('literal', 32, Fraction(4))
SCALED_PROFILE = ScaleProfile('scaled', 4, Fraction(1, 2))


def profile_for(scaled: Optional[bool] = None) -> ScaleProfile:
    """Profile selected by the flag, or by WORKBENCH_SCALED_CONSTANTS when unset."""
    if scaled is None:
        scaled = workbench_config.scaled_constants
    return SCALED_PROFILE if scaled else LITERAL_PROFILE
