from __future__ import annotations
from pydantic import BaseModel, ConfigDict

from .pauli_string import PauliString


class PauliTerm(BaseModel):
    """A Pauli string with its (dimensionless) coefficient."""
    model_config = ConfigDict(frozen=True)

    coeff: complex
    string: PauliString

    @property
    def is_real(self) -> bool:
        return self.coeff.imag == 0.0
