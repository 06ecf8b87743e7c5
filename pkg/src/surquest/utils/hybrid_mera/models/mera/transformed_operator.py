from __future__ import annotations
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..pauli import DEFAULT_DROP_THRESHOLD, PauliSum, SupportedOperator

HERMITIAN_TOLERANCE = 1e-10


class TransformedOperator(BaseModel):
    """Hamiltonian terms after conjugation with a MERA, each dense on its support."""
    model_config = ConfigDict(frozen=True)

    n_sites: int = Field(..., gt=0)
    n_layers: int = Field(..., ge=0)
    terms: Tuple[SupportedOperator, ...]

    @model_validator(mode="after")
    def _check_terms(self) -> "TransformedOperator":
        bound = min(self.n_sites, 3 * 2**self.n_layers)
        for term in self.terms:
            if term.n_qubits > bound:
                raise ValueError(f"term support {term.support} exceeds {bound} qubits")
            if not term.is_hermitian(HERMITIAN_TOLERANCE):
                raise ValueError(
                    f"term on {term.support} is not Hermitian "
                    f"(residual {term.hermiticity_residual():.3e})"
                )
        return self

    @property
    def max_support(self) -> int:
        return max((term.n_qubits for term in self.terms), default=0)

    def to_pauli_sum(self, drop_threshold: float = DEFAULT_DROP_THRESHOLD) -> PauliSum:
        """Pauli expansion of all terms, lifted to the full chain."""
        from ...pauli import embed, pauli_decompose

        pairs = []
        for term in self.terms:
            if term.n_qubits == 0:
                pairs.append((term.matrix[0, 0].real, "I" * self.n_sites))
                continue
            local = pauli_decompose(term, drop_threshold=drop_threshold)
            lifted = embed(local, term.support, self.n_sites)
            pairs.extend((t.coeff, t.string.axes) for t in lifted.terms)
        return PauliSum.from_terms(pairs, n_qubits=self.n_sites, drop_threshold=drop_threshold)
