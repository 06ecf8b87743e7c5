"""
Pauli-string algebra for the hybrid MERA toolkit.

Builds transverse-field Ising Hamiltonians, groups terms by Pauli weight and
converts between sparse Pauli sums and dense operators. Qubit 0 is always the
most significant tensor factor (bit ``n - 1`` of a basis index).
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, Sequence, Tuple

import numpy as np
import scipy.sparse as sparse

from .errors import ConfigurationError, InvalidSizeError, OperatorValidationError
from .models.pauli import (
    DEFAULT_DROP_THRESHOLD,
    PauliString,
    PauliSum,
    SupportedOperator,
)
from .models.pauli.pauli_string import AXES

logger = logging.getLogger(__name__)

DENSE_QUBIT_CAP = 14
HERMITIAN_TOLERANCE = 1e-10

PAULI_MATRICES: Dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
PAULI_BASIS = np.stack([PAULI_MATRICES[axis] for axis in AXES])


def build_tfim(n: int, j: float, lam: float, boundary: str = "periodic") -> PauliSum:
    """Transverse-field Ising chain ``sum_i j Z_i Z_{i+1} + sum_i lam X_i``.

    Args:
        n: Number of sites (>= 2).
        j: ZZ coupling.
        lam: Transverse field.
        boundary: ``"periodic"`` adds the wrap-around bond ``Z_{n-1} Z_0``.

    Returns:
        The Hamiltonian; zero coefficients are dropped. The periodic two-site
        ring is degenerate: its two bonds merge into one ``ZZ`` term of weight
        ``2 j``, so it has 3 terms instead of 2n.
    """
    if n < 2:
        raise InvalidSizeError(f"a TFIM chain needs at least 2 sites, got {n}")
    if boundary not in ("open", "periodic"):
        raise ConfigurationError(f"unknown boundary '{boundary}'")

    terms = []
    for left, right in chain_bonds(n, boundary):
        terms.append((j, PauliString.from_support(n, {left: "Z", right: "Z"}).axes))
    for site in range(n):
        terms.append((lam, PauliString.from_support(n, {site: "X"}).axes))

    return PauliSum.from_terms(terms, n_qubits=n, drop_threshold=0.0)


def chain_bonds(n: int, boundary: str) -> Tuple[Tuple[int, int], ...]:
    """Nearest-neighbour bonds ``(i, i + 1)``; periodic chains add ``(n - 1, 0)``.

    For ``n = 2`` the periodic wrap bond coincides with ``(0, 1)`` and is kept, so the
    two-site ring carries the bond twice.
    """
    bonds = [(i, i + 1) for i in range(n - 1)]
    if boundary == "periodic":
        bonds.append((n - 1, 0))
    return tuple(bonds)


def weight(p: PauliString) -> int:
    """Number of non-identity axes."""
    return sum(1 for axis in p.axes if axis != "I")


def group_by_weight(h: PauliSum) -> Dict[int, PauliSum]:
    """Split ``h`` into the sums of its terms of equal Pauli weight."""
    groups: Dict[int, list] = {}
    for term in h.terms:
        groups.setdefault(weight(term.string), []).append(term)

    return {
        w: PauliSum(n_qubits=h.n_qubits, terms=tuple(terms))
        for w, terms in sorted(groups.items())
    }


def embed(h: PauliSum, support: Sequence[int], n_qubits: int) -> PauliSum:
    """Place a Pauli sum defined on ``support`` into a register of ``n_qubits``."""
    if len(support) != h.n_qubits:
        raise InvalidSizeError(
            f"support of {len(support)} qubits for a {h.n_qubits}-qubit sum"
        )
    pairs = []
    for term in h.terms:
        factors = dict(zip(support, term.string.axes))
        pairs.append((term.coeff, PauliString.from_support(n_qubits, factors).axes))
    return PauliSum.from_terms(pairs, n_qubits=n_qubits, drop_threshold=0.0)


@lru_cache(maxsize=4096)
def _string_action(axes: str) -> Tuple[int, np.ndarray]:
    """Flip mask and per-index phase with ``P|b> = phase[b] |b ^ flip>``."""
    n = len(axes)
    indices = np.arange(2**n, dtype=np.int64)
    flip = 0
    parity = np.zeros(2**n, dtype=np.int64)
    n_y = 0
    for qubit, axis in enumerate(axes):
        bit = n - 1 - qubit
        if axis in ("X", "Y"):
            flip |= 1 << bit
        if axis in ("Y", "Z"):
            parity ^= (indices >> bit) & 1
        if axis == "Y":
            n_y += 1

    phase = (1j**n_y) * (1 - 2 * parity)
    phase.setflags(write=False)
    return flip, phase


def apply_pauli_sum(h: PauliSum, array: np.ndarray) -> np.ndarray:
    """Apply ``h`` to the leading (2^n) axis of ``array`` without forming a matrix."""
    dim = 2**h.n_qubits
    if array.shape[0] != dim:
        raise InvalidSizeError(
            f"array with leading dimension {array.shape[0]} for a {h.n_qubits}-qubit sum"
        )

    indices = np.arange(dim)
    out = np.zeros(array.shape, dtype=complex)
    extra = (slice(None),) + (None,) * (array.ndim - 1)
    for term in h.terms:
        flip, phase = _string_action(term.string.axes)
        out[indices ^ flip] += term.coeff * phase[extra] * array
    return out


def to_dense(h: PauliSum, max_qubits: int = DENSE_QUBIT_CAP) -> SupportedOperator:
    """Dense Kronecker realization of ``h`` on all of its qubits."""
    if h.n_qubits > max_qubits:
        raise InvalidSizeError(
            f"dense realization capped at {max_qubits} qubits, got {h.n_qubits}"
        )

    dim = 2**h.n_qubits
    indices = np.arange(dim)
    matrix = np.zeros((dim, dim), dtype=complex)
    for term in h.terms:
        flip, phase = _string_action(term.string.axes)
        matrix[indices ^ flip, indices] += term.coeff * phase

    return SupportedOperator(support=tuple(range(h.n_qubits)), matrix=matrix)


def to_sparse(h: PauliSum) -> sparse.csr_matrix:
    """Sparse realization with the same ordering convention as :func:`to_dense`."""
    dim = 2**h.n_qubits
    indices = np.arange(dim)
    matrix = sparse.csr_matrix((dim, dim), dtype=complex)
    for term in h.terms:
        flip, phase = _string_action(term.string.axes)
        matrix = matrix + sparse.csr_matrix(
            (term.coeff * phase, (indices ^ flip, indices)), shape=(dim, dim)
        )
    if h.is_real and not any("Y" in term.string.axes for term in h.terms):
        return matrix.real.tocsr()
    return matrix


def local_basis_coefficients(matrix: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Contract every qubit of ``matrix`` with a local operator basis.

    Returns the tensor ``T[o_1, ..., o_k] = Tr[(B_{o_1} x ... x B_{o_k}) A]``
    where ``basis`` has shape ``(m, 2, 2)``.
    """
    dim = matrix.shape[0]
    k = int(round(np.log2(dim))) if dim > 1 else 0
    if 2**k != dim or matrix.shape != (dim, dim):
        raise InvalidSizeError(f"matrix of shape {matrix.shape} is not a qubit operator")
    if k == 0:
        return np.asarray(matrix[0, 0])

    # axes: rows a_q..a_{k-1}, cols b_q..b_{k-1}, then contracted basis indices
    tensor = np.asarray(matrix).reshape((2,) * (2 * k))
    for q in range(k):
        remaining = k - q
        tensor = np.tensordot(tensor, basis, axes=([0, remaining], [2, 1]))
    return tensor


def pauli_decompose(
    op: SupportedOperator,
    drop_threshold: float = DEFAULT_DROP_THRESHOLD,
    tolerance: float = HERMITIAN_TOLERANCE,
) -> PauliSum:
    """Pauli expansion ``c_P = Tr[P op] / 2^k`` of a Hermitian operator on its support."""
    if op.n_qubits == 0:
        raise InvalidSizeError("cannot decompose an operator without support")
    residual = op.hermiticity_residual()
    if residual > tolerance:
        raise OperatorValidationError(
            f"operator on {op.support} is not Hermitian (residual {residual:.3e})"
        )

    k = op.n_qubits
    coefficients = local_basis_coefficients(op.matrix, PAULI_BASIS).real / 2**k
    kept = np.argwhere(np.abs(coefficients) > drop_threshold)
    letters = np.array(list(AXES))
    pairs = [
        (coefficients[tuple(index)], "".join(letters[index]))
        for index in kept
    ]
    logger.debug(f"Decomposed {k}-qubit operator into {len(pairs)} Pauli strings")

    return PauliSum.from_terms(pairs, n_qubits=k, drop_threshold=drop_threshold)
