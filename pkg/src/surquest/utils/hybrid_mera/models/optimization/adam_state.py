from __future__ import annotations
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class AdamState(BaseModel):
    """Riemannian ADAM moments: a tangent first moment and a scalar second moment per tensor."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    alpha: float = Field(0.01, gt=0.0)
    beta1: float = Field(0.9, ge=0.0, lt=1.0)
    beta2: float = Field(0.999, ge=0.0, lt=1.0)
    eps: float = Field(1e-8, gt=0.0)
    t: int = Field(0, ge=0)
    m: Tuple[np.ndarray, ...]
    v: Tuple[float, ...]

    @field_validator("m", mode="before")
    @classmethod
    def _freeze(cls, value) -> Tuple[np.ndarray, ...]:
        frozen = []
        for moment in value:
            moment = np.array(moment, dtype=complex)
            moment.setflags(write=False)
            frozen.append(moment)
        return tuple(frozen)

    @field_validator("v")
    @classmethod
    def _non_negative(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if any(v < 0 for v in value):
            raise ValueError(f"second moments must be non-negative, got {value}")
        return value

    @model_validator(mode="after")
    def _check_lengths(self) -> "AdamState":
        if len(self.m) != len(self.v):
            raise ValueError(f"{len(self.m)} first moments for {len(self.v)} second moments")
        return self
