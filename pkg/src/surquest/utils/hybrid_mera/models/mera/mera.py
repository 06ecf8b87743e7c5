from __future__ import annotations
from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..circuits import BlockGate, Circuit
from .mera_tensor import MeraTensor

Wiring = Tuple[int, str, Tuple[int, ...]]


def mera_wiring(n_sites: int, n_layers: int) -> List[Wiring]:
    """``(layer, kind, block)`` of every tensor in application order.

    Layers run from the coarsest ``n_layers`` down to 1; within a layer the
    isometry row (blocks ``[j 2^l, (j+1) 2^l)``) precedes the disentangler row
    (the same blocks shifted by ``2^(l-1)``, wrapping around the ring).
    """
    wiring = []
    for layer in range(n_layers, 0, -1):
        size = 2**layer
        starts = range(0, n_sites, size)
        for start in starts:
            wiring.append((layer, "isometry", tuple(range(start, start + size))))
        for start in starts:
            shifted = start + size // 2
            block = tuple((shifted + i) % n_sites for i in range(size))
            wiring.append((layer, "disentangler", block))
    return wiring


class Mera(BaseModel):
    """Periodic untruncated MERA; ``tensors`` are stored in application order."""
    model_config = ConfigDict(frozen=True)

    n_sites: int = Field(..., ge=2)
    n_layers: int = Field(..., ge=1)
    tensors: Tuple[MeraTensor, ...]

    @model_validator(mode="after")
    def _check_wiring(self) -> "Mera":
        if self.n_sites % 2**self.n_layers:
            raise ValueError(
                f"{self.n_sites} sites are not divisible by 2^{self.n_layers}"
            )
        expected = mera_wiring(self.n_sites, self.n_layers)
        actual = [(t.layer, t.kind, t.block) for t in self.tensors]
        if actual != expected:
            raise ValueError("tensor wiring does not match the periodic MERA layout")
        return self

    @property
    def matrices(self) -> List[np.ndarray]:
        return [tensor.matrix for tensor in self.tensors]

    def with_matrices(self, matrices: Sequence[np.ndarray]) -> "Mera":
        """Same wiring with new tensor matrices (validated)."""
        if len(matrices) != len(self.tensors):
            raise ValueError(f"{len(matrices)} matrices for {len(self.tensors)} tensors")
        tensors = tuple(
            MeraTensor(kind=t.kind, layer=t.layer, block=t.block, matrix=matrix)
            for t, matrix in zip(self.tensors, matrices)
        )
        return Mera(n_sites=self.n_sites, n_layers=self.n_layers, tensors=tensors)

    def to_circuit(self) -> Circuit:
        """The network as BLOCK gates, one circuit layer per tensor row."""
        rows = {}
        for tensor in self.tensors:
            rows.setdefault((tensor.layer, tensor.kind), []).append(
                BlockGate(qubits=tensor.block, matrix=tensor.matrix)
            )
        return Circuit(n_qubits=self.n_sites, layers=tuple(tuple(row) for row in rows.values()))
