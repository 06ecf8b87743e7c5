from __future__ import annotations
from typing import Literal, Tuple, Union

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    field_serializer,
    field_validator,
    model_validator,
)

UNITARY_TOLERANCE = 1e-10


class RZZGate(BaseModel):
    """``exp(-i theta/2 Z_i Z_j)``."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["rzz"] = "rzz"
    qubits: Tuple[int, int]
    theta: float

    @field_validator("qubits")
    @classmethod
    def _distinct(cls, value: Tuple[int, int]) -> Tuple[int, int]:
        if value[0] == value[1]:
            raise ValueError(f"RZZ needs two distinct qubits, got {value}")
        return value


class RXGate(BaseModel):
    """``exp(-i phi/2 X_q)``."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["rx"] = "rx"
    qubits: Tuple[int]
    phi: float


class BlockGate(BaseModel):
    """Dense unitary on an ordered list of qubits (first = most significant)."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: Literal["block"] = "block"
    qubits: Tuple[int, ...]
    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def _load_matrix(cls, value) -> np.ndarray:
        if isinstance(value, dict):
            value = np.array(value["real"]) + 1j * np.array(value["imag"])
        matrix = np.array(value, dtype=complex)
        matrix.setflags(write=False)
        return matrix

    @model_validator(mode="after")
    def _check_unitary(self) -> "BlockGate":
        if len(set(self.qubits)) != len(self.qubits) or not self.qubits:
            raise ValueError(f"block qubits {self.qubits} must be distinct and non-empty")
        dim = 2 ** len(self.qubits)
        if self.matrix.shape != (dim, dim):
            raise ValueError(
                f"block matrix shape {self.matrix.shape} does not fit {len(self.qubits)} qubits"
            )
        residual = np.max(np.abs(self.matrix.conj().T @ self.matrix - np.eye(dim)))
        if residual > UNITARY_TOLERANCE:
            raise ValueError(f"block matrix is not unitary (residual {residual:.3e})")
        return self

    @field_serializer("matrix")
    def _dump_matrix(self, matrix: np.ndarray) -> dict:
        return {"real": matrix.real.tolist(), "imag": matrix.imag.tolist()}


Gate = Union[RZZGate, RXGate, BlockGate]
