"""
Reference values: exact diagonalization, the free-fermion TFIM energy and
error/depth metrics.
"""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .errors import InvalidSizeError, NumericalError
from .models.circuits import Circuit, Statevector
from .models.oracle import GroundTruth
from .models.pauli import PauliSum
from .pauli import DENSE_QUBIT_CAP, apply_pauli_sum, to_dense, to_sparse

logger = logging.getLogger(__name__)

DENSE_EIGH_CAP = 10
RESIDUAL_TOLERANCE = 1e-9


def dense_ground_state(h: PauliSum) -> GroundTruth:
    """Lowest eigenpair of ``h`` (full eigensolve up to 10 qubits, Lanczos up to 14)."""
    n = h.n_qubits
    if n > DENSE_QUBIT_CAP:
        raise InvalidSizeError(f"exact diagonalization capped at {DENSE_QUBIT_CAP} qubits, got {n}")

    if n <= DENSE_EIGH_CAP:
        values, vectors = scipy.linalg.eigh(to_dense(h).matrix, subset_by_index=[0, 0])
    else:
        values, vectors = scipy.sparse.linalg.eigsh(to_sparse(h), k=1, which="SA", tol=0.0)
    e0 = float(values[0])
    vector = np.asarray(vectors[:, 0], dtype=complex)
    vector /= np.linalg.norm(vector)

    residual = float(np.linalg.norm(apply_pauli_sum(h, vector) - e0 * vector))
    if residual > RESIDUAL_TOLERANCE * max(1.0, abs(e0)):
        raise NumericalError(f"ground-state residual {residual:.3e} above tolerance")
    logger.debug(f"Exact ground energy of {n} qubits: {e0!r} (residual {residual:.1e})")
    return GroundTruth(e0=e0, vector=Statevector(n_qubits=n, amplitudes=vector))


def tfim_free_fermion_energy(n: int, j: float, lam: float) -> float:
    """Open-chain ground energy of ``sum j Z Z + sum lam X`` from its Bogoliubov-de Gennes spectrum."""
    if n < 2:
        raise InvalidSizeError(f"free-fermion oracle needs at least 2 sites, got {n}")
    a = np.diag(np.full(n, -2.0 * lam))
    b = np.zeros((n, n))
    for i in range(n - 1):
        a[i, i + 1] = a[i + 1, i] = j
        b[i, i + 1] = j
        b[i + 1, i] = -j
    bdg = np.block([[a, b], [-b, -a]])
    spectrum = scipy.linalg.eigvalsh(bdg)
    return float(-0.5 * np.sum(spectrum[n:]))


def relative_error(e: float, e0: float) -> float:
    """``|e - e0| / |e0|``."""
    if e0 == 0:
        raise NumericalError("relative error against a zero reference energy")
    return abs(e - e0) / abs(e0)


def two_qubit_depth(c: Circuit) -> int:
    """Number of layers of gates acting on two or more qubits (single-qubit gates are free).

    Gates are placed greedily on the earliest level after every gate already
    touching their qubits. One periodic Trotter step on four sites, built as an
    even and an odd ``RZZ`` layer, has depth 2. The annealing circuit of ``K``
    steps opens and closes with an even half-step and merges the inner ones,
    so its depth is ``2 K + 1``.
    """
    depth = [0] * c.n_qubits
    for gate in c.gates:
        if len(gate.qubits) < 2:
            continue
        level = max(depth[q] for q in gate.qubits) + 1
        for q in gate.qubits:
            depth[q] = level
    return max(depth, default=0)
