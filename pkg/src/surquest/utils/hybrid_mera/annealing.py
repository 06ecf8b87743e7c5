"""
Digital quantum annealing of the transverse-field Ising chain.

Builds the second-order Trotter circuit (odd bonds in the middle of a step,
even bonds merged across consecutive steps) and runs it on a dense statevector.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ConfigurationError, InvalidSizeError, NumericalError
from .models.circuits import (
    AnnealingSchedule,
    Circuit,
    Gate,
    RXGate,
    RZZGate,
    Statevector,
)
from .models.pauli import PauliSum
from .pauli import apply_pauli_sum, chain_bonds

logger = logging.getLogger(__name__)

IMAGINARY_TOLERANCE = 1e-10


class TrotterAngles(NamedTuple):
    theta_odd: float
    phi: float
    theta_even_half: float
    theta_even_merged: float


def schedule_angles(s: AnnealingSchedule, k: int) -> TrotterAngles:
    """Gate angles of Trotter step ``k`` (midpoint rule ``t_k + dt / 2``)."""
    if not 0 <= k < s.n_steps:
        raise IndexError(f"step {k} outside 0..{s.n_steps - 1}")

    dt = s.dt
    middle = k * dt + dt / 2
    next_middle = (k + 1) * dt + dt / 2
    coupling = s.coupling(middle)

    return TrotterAngles(
        theta_odd=2 * coupling * dt,
        phi=2 * s.field(middle) * dt / 2,
        theta_even_half=2 * coupling * dt / 2,
        theta_even_merged=2 * (coupling + s.coupling(next_middle)) * dt / 2,
    )


def split_bonds(n: int, boundary: str):
    """Even bonds ``(i, i+1)`` with even ``i`` and odd bonds with odd ``i``."""
    if boundary == "periodic" and n % 2:
        raise ConfigurationError(
            f"a periodic chain needs an even number of sites for the odd/even split, got {n}"
        )
    bonds = chain_bonds(n, boundary)
    even = [bond for bond in bonds if bond[0] % 2 == 0]
    odd = [bond for bond in bonds if bond[0] % 2 == 1]
    return even, odd


def build_annealing_circuit(
    s: AnnealingSchedule, n: int, boundary: str = "periodic"
) -> Circuit:
    """Second-order Trotter annealing circuit with merged even-bond layers."""
    if n < 2:
        raise InvalidSizeError(f"annealing needs at least 2 sites, got {n}")
    even, odd = split_bonds(n, boundary)

    def rzz_layer(bonds, theta):
        if theta == 0.0:
            return ()
        return tuple(RZZGate(qubits=bond, theta=theta) for bond in bonds)

    def rx_layer(phi):
        if phi == 0.0:
            return ()
        return tuple(RXGate(qubits=(q,), phi=phi) for q in range(n))

    layers = [rzz_layer(even, schedule_angles(s, 0).theta_even_half)]
    last = s.n_steps - 1
    for k in range(s.n_steps):
        angles = schedule_angles(s, k)
        closing = angles.theta_even_half if k == last else angles.theta_even_merged
        layers += [
            rx_layer(angles.phi),
            rzz_layer(odd, angles.theta_odd),
            rx_layer(angles.phi),
            rzz_layer(even, closing),
        ]

    circuit = Circuit(n_qubits=n, layers=tuple(layer for layer in layers if layer))
    logger.debug(
        f"Built annealing circuit: n={n}, steps={s.n_steps}, "
        f"{len(circuit.layers)} layers, {len(circuit.gates)} gates"
    )
    return circuit


@lru_cache(maxsize=256)
def _zz_signs(n: int, i: int, j: int) -> np.ndarray:
    """+1 where bits i and j agree, -1 where they differ."""
    indices = np.arange(2**n)
    differ = ((indices >> (n - 1 - i)) ^ (indices >> (n - 1 - j))) & 1
    signs = 1.0 - 2.0 * differ
    signs.setflags(write=False)
    return signs


def rx_matrix(phi: float) -> np.ndarray:
    c, s = np.cos(phi / 2), np.sin(phi / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def apply_block(tensor: np.ndarray, matrix: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    """Apply ``matrix`` to the given axes of a tensor of qubit axes.

    The first listed axis is the most significant factor of ``matrix``.
    """
    k = len(axes)
    operator = np.asarray(matrix).reshape((2,) * (2 * k))
    out = np.tensordot(operator, tensor, axes=(list(range(k, 2 * k)), list(axes)))
    return np.moveaxis(out, list(range(k)), list(axes))


def apply_gate(amplitudes: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    """Apply one gate to a flat amplitude array (norm is not checked)."""
    if gate.kind == "rzz":
        i, j = gate.qubits
        return amplitudes * np.exp(-0.5j * gate.theta * _zz_signs(n, i, j))

    matrix = rx_matrix(gate.phi) if gate.kind == "rx" else gate.matrix
    tensor = apply_block(amplitudes.reshape((2,) * n), matrix, gate.qubits)
    return tensor.reshape(-1)


def evolve(amplitudes: np.ndarray, c: Circuit) -> np.ndarray:
    for gate in c.gates:
        amplitudes = apply_gate(amplitudes, gate, c.n_qubits)
    return amplitudes


def apply_circuit(psi: Statevector, c: Circuit) -> Statevector:
    """Apply the gates of ``c`` in order."""
    if psi.n_qubits != c.n_qubits:
        raise InvalidSizeError(
            f"state of {psi.n_qubits} qubits for a {c.n_qubits}-qubit circuit"
        )
    return Statevector(n_qubits=psi.n_qubits, amplitudes=evolve(psi.amplitudes, c))


def minus_state(n: int) -> Statevector:
    """Product state |->^n, the ground state of the initial field term."""
    indices = np.arange(2**n)
    parity = np.zeros(2**n, dtype=np.int64)
    for bit in range(n):
        parity ^= (indices >> bit) & 1
    amplitudes = (1.0 - 2.0 * parity) / np.sqrt(2.0**n)
    return Statevector(n_qubits=n, amplitudes=amplitudes)


def run_annealing(
    s: AnnealingSchedule, n: int, boundary: str = "periodic"
) -> Statevector:
    """Prepare the annealing state from |->^n."""
    circuit = build_annealing_circuit(s, n, boundary)
    psi = apply_circuit(minus_state(n), circuit)
    logger.info(
        f"Annealed {n} sites to t_final={s.t_final!r} with dt={s.dt!r} "
        f"({s.n_steps} Trotter steps)"
    )
    return psi


def expectation(amplitudes: np.ndarray, h: PauliSum) -> float:
    """``<a|h|a>`` for a raw amplitude array, without normalization."""
    if amplitudes.shape[0] != 2**h.n_qubits:
        raise InvalidSizeError(
            f"{amplitudes.shape[0]} amplitudes for a {h.n_qubits}-qubit observable"
        )
    value = np.vdot(amplitudes, apply_pauli_sum(h, amplitudes))
    if abs(value.imag) > IMAGINARY_TOLERANCE * max(1.0, abs(value.real)):
        raise NumericalError(f"expectation value has imaginary part {value.imag!r}")
    return float(value.real)


def energy(psi: Statevector, h: PauliSum) -> float:
    """``<psi|H|psi>``."""
    if psi.n_qubits != h.n_qubits:
        raise InvalidSizeError(
            f"state of {psi.n_qubits} qubits for a {h.n_qubits}-qubit Hamiltonian"
        )
    return expectation(psi.amplitudes, h)

