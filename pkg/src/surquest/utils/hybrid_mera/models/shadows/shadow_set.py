from __future__ import annotations
from typing import Iterable, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .shadow_meta import ShadowMeta
from .snapshot import BASES, Snapshot


class ShadowSet(BaseModel):
    """Immutable collection of snapshots stored as two ``(S, n)`` code arrays.

    ``bases`` holds X=0, Y=1, Z=2; ``outcomes`` holds the measured bits.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n_qubits: int = Field(..., gt=0)
    bases: np.ndarray
    outcomes: np.ndarray
    meta: ShadowMeta = Field(default_factory=ShadowMeta)

    @field_validator("bases", "outcomes", mode="before")
    @classmethod
    def _freeze(cls, value) -> np.ndarray:
        array = np.array(value, dtype=np.uint8)
        if array.ndim == 1 and array.size == 0:
            array = array.reshape(0, 0)
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def _check(self) -> "ShadowSet":
        if self.bases.shape != self.outcomes.shape:
            raise ValueError(
                f"bases shape {self.bases.shape} differs from outcomes shape {self.outcomes.shape}"
            )
        if self.bases.ndim != 2 or (self.bases.shape[0] and self.bases.shape[1] != self.n_qubits):
            raise ValueError(
                f"snapshot arrays of shape {self.bases.shape} for {self.n_qubits} qubits"
            )
        if self.bases.size and (self.bases.max() > 2 or self.outcomes.max() > 1):
            raise ValueError("basis codes must be in 0..2 and outcomes in 0..1")
        return self

    @classmethod
    def from_snapshots(
        cls, snapshots: Iterable[Snapshot], meta: Optional[ShadowMeta] = None
    ) -> "ShadowSet":
        snapshots = list(snapshots)
        if not snapshots:
            raise ValueError("cannot infer the qubit count of an empty snapshot list")
        n_qubits = snapshots[0].n_qubits
        if any(snap.n_qubits != n_qubits for snap in snapshots):
            raise ValueError("snapshots of different sizes in one set")
        bases = [[BASES.index(b) for b in snap.bases] for snap in snapshots]
        outcomes = [[int(o) for o in snap.outcomes] for snap in snapshots]
        return cls(
            n_qubits=n_qubits,
            bases=bases,
            outcomes=outcomes,
            meta=meta or ShadowMeta(),
        )

    @property
    def size(self) -> int:
        return int(self.bases.shape[0])

    @property
    def snapshots(self) -> Tuple[Snapshot, ...]:
        letters = np.array(list(BASES))
        return tuple(
            Snapshot(
                bases="".join(letters[row]),
                outcomes="".join(str(bit) for bit in bits),
            )
            for row, bits in zip(self.bases, self.outcomes)
        )
