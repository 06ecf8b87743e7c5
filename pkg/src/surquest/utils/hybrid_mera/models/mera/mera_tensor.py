from __future__ import annotations
from typing import Literal, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

ISOMETRY_TOLERANCE = 1e-10


class MeraTensor(BaseModel):
    """One untruncated (hence unitary) MERA tensor acting on a block of ``2^layer`` qubits."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: Literal["disentangler", "isometry"]
    layer: int = Field(..., ge=1)
    block: Tuple[int, ...]
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
    def _check(self) -> "MeraTensor":
        if len(self.block) != 2**self.layer or len(set(self.block)) != len(self.block):
            raise ValueError(
                f"layer-{self.layer} tensor needs {2**self.layer} distinct qubits, got {self.block}"
            )
        dim = 2 ** len(self.block)
        if self.matrix.shape != (dim, dim):
            raise ValueError(f"tensor shape {self.matrix.shape} does not fit block {self.block}")
        residual = self.isometry_residual()
        if residual > ISOMETRY_TOLERANCE:
            raise ValueError(f"tensor on {self.block} is not isometric (residual {residual:.3e})")
        return self

    def isometry_residual(self) -> float:
        dim = self.matrix.shape[1]
        return float(np.max(np.abs(self.matrix.conj().T @ self.matrix - np.eye(dim))))

    @property
    def is_identity(self) -> bool:
        return bool(np.array_equal(self.matrix, np.eye(self.matrix.shape[0])))

    @field_serializer("matrix")
    def _dump_matrix(self, matrix: np.ndarray) -> dict:
        return {"real": matrix.real.tolist(), "imag": matrix.imag.tolist()}
