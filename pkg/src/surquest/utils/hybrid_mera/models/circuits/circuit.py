from __future__ import annotations
from typing import Annotated, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .gates import BlockGate, Gate, RXGate, RZZGate

AnyGate = Annotated[Gate, Field(discriminator="kind")]


class Circuit(BaseModel):
    """Ordered gate layers on ``n_qubits``; gates within a layer act on disjoint qubits."""
    model_config = ConfigDict(frozen=True)

    n_qubits: int = Field(..., gt=0)
    layers: Tuple[Tuple[AnyGate, ...], ...] = ()

    @model_validator(mode="after")
    def _check_layers(self) -> "Circuit":
        for index, layer in enumerate(self.layers):
            seen = set()
            for gate in layer:
                for qubit in gate.qubits:
                    if not 0 <= qubit < self.n_qubits:
                        raise ValueError(
                            f"gate on qubit {qubit} in layer {index} is outside "
                            f"a {self.n_qubits}-qubit register"
                        )
                    if qubit in seen:
                        raise ValueError(f"layer {index} uses qubit {qubit} twice")
                    seen.add(qubit)
        return self

    @property
    def gates(self) -> List[Gate]:
        """Gates in application order."""
        return [gate for layer in self.layers for gate in layer]

    def count(self, kind: str) -> int:
        return sum(1 for gate in self.gates if gate.kind == kind)


__all__ = ["Circuit", "RZZGate", "RXGate", "BlockGate"]
