from __future__ import annotations
from typing import Tuple
from pydantic import BaseModel, ConfigDict, computed_field, field_validator

AXES = "IXYZ"


class PauliString(BaseModel):
    """Tensor product of single-qubit Paulis, one letter per qubit in qubit order."""
    model_config = ConfigDict(frozen=True)

    axes: str

    @field_validator("axes")
    @classmethod
    def _check_axes(cls, value: str) -> str:
        if not value:
            raise ValueError("a Pauli string needs at least one qubit")
        unknown = set(value) - set(AXES)
        if unknown:
            raise ValueError(f"unknown Pauli axes {sorted(unknown)} in '{value}'")
        return value

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(axes="I" * n_qubits)

    @classmethod
    def from_support(cls, n_qubits: int, factors: dict) -> "PauliString":
        """Build a string from a {qubit: axis} mapping, identity elsewhere."""
        letters = ["I"] * n_qubits
        for qubit, axis in factors.items():
            letters[qubit] = axis
        return cls(axes="".join(letters))

    @computed_field
    @property
    def n_qubits(self) -> int:
        return len(self.axes)

    @property
    def support(self) -> Tuple[int, ...]:
        """Qubits carrying a non-identity axis."""
        return tuple(q for q, axis in enumerate(self.axes) if axis != "I")

    @property
    def codes(self) -> Tuple[int, ...]:
        """Axis codes per qubit: I=0, X=1, Y=2, Z=3."""
        return tuple(AXES.index(axis) for axis in self.axes)

    def __str__(self) -> str:
        return self.axes
