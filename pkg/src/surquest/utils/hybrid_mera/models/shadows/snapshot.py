from __future__ import annotations

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

BASES = "XYZ"


class Snapshot(BaseModel):
    """One shadow measurement: a basis letter and an outcome bit per qubit."""
    model_config = ConfigDict(frozen=True)

    bases: str
    outcomes: str

    @field_validator("bases")
    @classmethod
    def _check_bases(cls, value: str) -> str:
        unknown = set(value) - set(BASES)
        if unknown:
            raise ValueError(f"unknown measurement bases {sorted(unknown)} in '{value}'")
        return value

    @field_validator("outcomes")
    @classmethod
    def _check_outcomes(cls, value: str) -> str:
        if set(value) - {"0", "1"}:
            raise ValueError(f"outcomes must be a bit string, got '{value}'")
        return value

    @model_validator(mode="after")
    def _check_lengths(self) -> "Snapshot":
        if not self.bases or len(self.bases) != len(self.outcomes):
            raise ValueError(
                f"{len(self.bases)} bases for {len(self.outcomes)} outcomes"
            )
        return self

    @property
    def n_qubits(self) -> int:
        return len(self.bases)
