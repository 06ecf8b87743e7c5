from __future__ import annotations
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator


class GradientSet(BaseModel):
    """Euclidean gradient per MERA tensor (``dE = 2 Re <G, dX>``) and the objective value."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrices: Tuple[np.ndarray, ...]
    energy: float

    @field_validator("matrices", mode="before")
    @classmethod
    def _freeze(cls, value) -> Tuple[np.ndarray, ...]:
        frozen = []
        for matrix in value:
            matrix = np.array(matrix, dtype=complex)
            if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
                raise ValueError(f"gradient block of shape {matrix.shape} is not square")
            matrix.setflags(write=False)
            frozen.append(matrix)
        return tuple(frozen)

    def norm(self) -> float:
        return float(np.sqrt(sum(np.sum(np.abs(g) ** 2) for g in self.matrices)))
