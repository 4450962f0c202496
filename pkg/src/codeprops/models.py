"""
Parameter models and the verdict type shared by all checkers.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, model_validator

Real = float


class PgcParams(BaseModel):
    """
    (n_in, n_out, r, s, w_min) partial good code: every x with wt(x) in [r, s]
    must encode to weight at least w_min.
    """
    model_config = ConfigDict(frozen=True)

    n_in: int
    n_out: int
    r: Real
    s: Real
    w_min: Real

    @model_validator(mode='after')
    def _check_band(self) -> 'PgcParams':
        if not 1 <= self.r <= self.s <= self.n_in:
            raise ValueError(f"need 1 <= r <= s <= n_in, got r={self.r}, s={self.s}, n_in={self.n_in}")
        if not 0 < self.w_min <= self.n_out:
            raise ValueError(f"need 0 < w_min <= n_out, got w_min={self.w_min}, n_out={self.n_out}")
        return self

    @classmethod
    def literal_instance(cls, n: int, r: Real, s: Real) -> 'PgcParams':
        """The literal instance: 32n outputs and weight floor 4n."""
        return cls(n_in=n, n_out=32 * n, r=r, s=s, w_min=4 * n)

    def band(self) -> range:
        """Integer input weights inside [r, s]."""
        return range(max(1, math.ceil(self.r)), math.floor(self.s) + 1)


class RangeDetectorParams(BaseModel):
    """(m_in, n_out, ell, k, r, s): inputs of weight in [ell, k] map to weight in [r, s]."""
    model_config = ConfigDict(frozen=True)

    m_in: int
    n_out: int
    ell: Real
    k: Real
    r: Real
    s: Optional[Real] = None

    @model_validator(mode='before')
    @classmethod
    def _default_s(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get('s') is None and 'n_out' in data:
            data = {**data, 's': data['n_out']}
        return data

    @model_validator(mode='after')
    def _check_ranges(self) -> 'RangeDetectorParams':
        if self.ell > self.k:
            raise ValueError(f"need ell <= k, got ell={self.ell}, k={self.k}")
        if self.r > self.s:
            raise ValueError(f"need r <= s, got r={self.r}, s={self.s}")
        return self

    def band(self) -> range:
        return range(max(0, math.ceil(self.ell)), min(self.m_in, math.floor(self.k)) + 1)


@dataclass
class Verdict:
    """Outcome of an exhaustive check; refuted properties carry a concrete counterexample."""
    ok: bool
    counterexample: Any = None
    enumerated: int = 0
    elapsed_ms: float = 0.0
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'ok': self.ok,
            'counterexample': self.counterexample,
            'enumerated': self.enumerated,
            'elapsed_ms': round(self.elapsed_ms, 3),
            **({'detail': self.detail} if self.detail else {}),
        }

    def to_json(self) -> Dict[str, Any]:
        return self.to_dict()
