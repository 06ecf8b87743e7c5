from __future__ import annotations
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

HERMITIAN_TOLERANCE = 1e-12


class SupportedOperator(BaseModel):
    """Dense operator acting on an ordered list of qubits (first = most significant)."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    support: Tuple[int, ...]
    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def _freeze_matrix(cls, value) -> np.ndarray:
        matrix = np.array(value, dtype=complex)
        matrix.setflags(write=False)
        return matrix

    @model_validator(mode="after")
    def _check_shape(self) -> "SupportedOperator":
        if len(set(self.support)) != len(self.support):
            raise ValueError(f"support {self.support} repeats a qubit")
        dim = 2 ** len(self.support)
        if self.matrix.shape != (dim, dim):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match support of "
                f"{len(self.support)} qubits"
            )
        return self

    @property
    def n_qubits(self) -> int:
        return len(self.support)

    def hermiticity_residual(self) -> float:
        if self.matrix.size == 0:
            return 0.0
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def is_hermitian(self, tolerance: float = HERMITIAN_TOLERANCE) -> bool:
        return self.hermiticity_residual() <= tolerance
