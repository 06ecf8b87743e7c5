from __future__ import annotations

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-10


class Statevector(BaseModel):
    """Normalized pure state of ``n_qubits`` (qubit 0 = most significant bit)."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n_qubits: int = Field(..., gt=0)
    amplitudes: np.ndarray

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _freeze(cls, value) -> np.ndarray:
        amplitudes = np.array(value, dtype=complex).reshape(-1)
        amplitudes.setflags(write=False)
        return amplitudes

    @model_validator(mode="after")
    def _check(self) -> "Statevector":
        if self.amplitudes.shape != (2**self.n_qubits,):
            raise ValueError(
                f"{self.amplitudes.size} amplitudes for {self.n_qubits} qubits"
            )
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"state norm {norm!r} deviates from 1")
        return self

    @classmethod
    def from_unnormalized(cls, amplitudes: np.ndarray) -> "Statevector":
        """Normalize explicitly; the rescaling is logged."""
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = float(np.linalg.norm(amplitudes))
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        if abs(norm - 1.0) > NORM_TOLERANCE:
            logger.warning(f"Renormalizing state with norm {norm!r}")
        n_qubits = int(round(np.log2(amplitudes.size)))
        return cls(n_qubits=n_qubits, amplitudes=amplitudes / norm)

    def renormalized(self) -> "Statevector":
        return Statevector.from_unnormalized(self.amplitudes)

    def tensor(self) -> np.ndarray:
        """Amplitudes as a rank-n tensor, axis q = qubit q."""
        return self.amplitudes.reshape((2,) * self.n_qubits)

    def fidelity(self, other: "Statevector") -> float:
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)
