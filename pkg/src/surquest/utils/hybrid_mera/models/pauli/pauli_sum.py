from __future__ import annotations

import re
from typing import Dict, Iterable, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .pauli_string import PauliString
from .pauli_term import PauliTerm

DEFAULT_DROP_THRESHOLD = 1e-12

_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*"
    r"(?:(?P<coeff>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*\*\s*)?"
    r"(?P<axes>[IXYZ]+)\s*"
)


class PauliSum(BaseModel):
    """Sparse weighted sum of Pauli strings in canonical (lexicographic) order.

    Use :meth:`from_terms` to merge duplicates and drop negligible coefficients;
    the plain constructor only checks that the canonical form is already met.
    """
    model_config = ConfigDict(frozen=True)

    n_qubits: int = Field(..., gt=0)
    terms: Tuple[PauliTerm, ...] = ()

    @model_validator(mode="after")
    def _check_canonical(self) -> "PauliSum":
        previous = None
        for term in self.terms:
            if term.string.n_qubits != self.n_qubits:
                raise ValueError(
                    f"term '{term.string}' has {term.string.n_qubits} qubits, "
                    f"expected {self.n_qubits}"
                )
            if previous is not None and term.string.axes <= previous:
                raise ValueError(
                    f"terms not in canonical order or duplicated at '{term.string}'"
                )
            previous = term.string.axes
        return self

    @classmethod
    def from_terms(
        cls,
        terms: Iterable[Tuple[complex, str]],
        n_qubits: int,
        drop_threshold: float = DEFAULT_DROP_THRESHOLD,
    ) -> "PauliSum":
        """Merge ``(coeff, axes)`` pairs and drop coefficients at or below the threshold."""
        merged: Dict[str, complex] = {}
        for coeff, axes in terms:
            merged[axes] = merged.get(axes, 0j) + complex(coeff)

        kept = [
            PauliTerm(coeff=_tidy(coeff), string=PauliString(axes=axes))
            for axes, coeff in sorted(merged.items())
            if abs(coeff) > drop_threshold
        ]
        return cls(n_qubits=n_qubits, terms=tuple(kept))

    @classmethod
    def parse(cls, text: str) -> "PauliSum":
        """Parse the textual notation, e.g. ``"-1.0 * ZZII + 1.0 * XIII"``."""
        text = text.replace("−", "-").strip()
        pairs = []
        position = 0
        while position < len(text):
            match = _TERM.match(text, position)
            if match is None or match.end() == position:
                raise ValueError(f"cannot parse Pauli sum near '{text[position:]}'")
            if pairs and match.group("sign") is None:
                raise ValueError(f"missing '+' or '-' before '{match.group('axes')}'")
            coeff = float(match.group("coeff") or 1.0)
            if match.group("sign") == "-":
                coeff = -coeff
            pairs.append((coeff, match.group("axes")))
            position = match.end()

        if not pairs:
            raise ValueError("empty Pauli sum text")

        lengths = {len(axes) for _, axes in pairs}
        if len(lengths) != 1:
            raise ValueError(f"Pauli strings of different lengths: {sorted(lengths)}")

        return cls.from_terms(pairs, n_qubits=lengths.pop(), drop_threshold=0.0)

    def __str__(self) -> str:
        if not self.terms:
            return f"0 * {'I' * self.n_qubits}"
        chunks = []
        for index, term in enumerate(self.terms):
            coeff = term.coeff
            value = coeff.real if term.is_real else coeff
            if term.is_real and index > 0:
                sign = "-" if value < 0 else "+"
                chunks.append(f"{sign} {abs(value)!r} * {term.string}")
            elif index > 0:
                chunks.append(f"+ {value!r} * {term.string}")
            else:
                chunks.append(f"{value!r} * {term.string}")
        return " ".join(chunks)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, axes: str) -> complex:
        """Coefficient of the given string (0 when absent)."""
        for term in self.terms:
            if term.string.axes == axes:
                return term.coeff
        return 0j

    def axis_codes(self) -> np.ndarray:
        """(terms, qubits) array of axis codes I=0, X=1, Y=2, Z=3."""
        if not self.terms:
            return np.zeros((0, self.n_qubits), dtype=np.uint8)
        return np.array([term.string.codes for term in self.terms], dtype=np.uint8)

    def coefficients(self) -> np.ndarray:
        return np.array([term.coeff for term in self.terms], dtype=complex)

    @property
    def is_real(self) -> bool:
        return all(term.is_real for term in self.terms)


def _tidy(coeff: complex) -> complex:
    """Remove round-off imaginary parts so real Hamiltonians stay real."""
    if abs(coeff.imag) <= 1e-15 * max(1.0, abs(coeff.real)):
        return complex(coeff.real, 0.0)
    return coeff
