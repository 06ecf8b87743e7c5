"""
Synthetic noise for the annealing circuit.

Noise strength is scaled by a single factor ``eta``; noisy states are sampled as
Monte-Carlo trajectories (random Pauli insertions after gates, stochastic
amplitude damping and dephasing after every gate layer).
"""

from __future__ import annotations

import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from .annealing import apply_block, apply_gate, minus_state
from .errors import InvalidSizeError, NoiseModelError, NoiseScalingError
from .models.circuits import Circuit, NoiseModel, Statevector
from .pauli import PAULI_MATRICES

logger = logging.getLogger(__name__)

_LETTERS = "IXYZ"


def scale_noise(m: NoiseModel, eta: float) -> NoiseModel:
    """Scale every error source of ``m`` by ``eta``.

    Readout and depolarizing probabilities are multiplied by ``eta``; T1/T2 are
    changed so that the per-gate relaxation probability ``1 - exp(-t_g / t)`` is
    multiplied by ``eta``, i.e. ``t -> t / alpha`` with
    ``alpha = -(t / t_g) * log(1 - eta * (1 - exp(-t_g / t)))``.
    """
    if eta < 0:
        raise NoiseScalingError(f"noise strength must be non-negative, got {eta!r}")
    for name in ("e_ro", "p1", "p2"):
        if eta * getattr(m, name) > 1.0:
            raise NoiseScalingError(
                f"eta={eta!r} pushes {name}={getattr(m, name)!r} above probability 1"
            )

    def scaled_time(t: float) -> float:
        probability = eta * -math.expm1(-m.t_g / t)
        if probability >= 1.0:
            raise NoiseScalingError(
                f"eta={eta!r} makes the relaxation probability for t={t!r} reach 1"
            )
        if probability == 0.0:
            return math.inf
        return -m.t_g / math.log1p(-probability)

    t1 = scaled_time(m.t1)
    t2 = scaled_time(m.t2)
    if t2 > 2.0 * t1:
        logger.warning(f"Scaled t2={t2!r} exceeds 2*t1={2.0 * t1!r}; clamping")
        t2 = 2.0 * t1

    return NoiseModel(
        e_ro=eta * m.e_ro, p1=eta * m.p1, p2=eta * m.p2, t1=t1, t2=t2, t_g=m.t_g
    )


def _apply_pauli_string(
    amplitudes: np.ndarray, qubits: Sequence[int], axes: str, n: int
) -> np.ndarray:
    tensor = amplitudes.reshape((2,) * n)
    for qubit, axis in zip(qubits, axes):
        if axis != "I":
            tensor = apply_block(tensor, PAULI_MATRICES[axis], (qubit,))
    return tensor.reshape(-1)


def random_pauli(k: int, rng: np.random.Generator) -> str:
    """Uniformly random non-identity Pauli string on ``k`` qubits."""
    label = int(rng.integers(1, 4**k))
    letters = []
    for _ in range(k):
        label, digit = divmod(label, 4)
        letters.append(_LETTERS[digit])
    return "".join(reversed(letters))


def _relax(
    amplitudes: np.ndarray, m: NoiseModel, rng: np.random.Generator, n: int
) -> np.ndarray:
    gamma = m.damping_probability
    p_flip = m.dephasing_probability
    if gamma == 0.0 and p_flip == 0.0:
        return amplitudes

    tensor = amplitudes.reshape((2,) * n)
    for qubit in range(n):
        if gamma > 0.0:
            excited = np.take(tensor, 1, axis=qubit)
            p_jump = gamma * float(np.sum(np.abs(excited) ** 2))
            if rng.random() < p_jump:
                kraus = np.array([[0.0, math.sqrt(gamma)], [0.0, 0.0]], dtype=complex)
            else:
                kraus = np.diag([1.0, math.sqrt(1.0 - gamma)]).astype(complex)
            tensor = apply_block(tensor, kraus, (qubit,))
            tensor = tensor / np.linalg.norm(tensor)
        if p_flip > 0.0 and rng.random() < p_flip:
            tensor = apply_block(tensor, PAULI_MATRICES["Z"], (qubit,))
    return tensor.reshape(-1)


def run_noisy_trajectory(
    c: Circuit,
    m: NoiseModel,
    rng: np.random.Generator,
    initial: Optional[Statevector] = None,
) -> Statevector:
    """One Monte-Carlo trajectory of ``c`` under ``m``, starting from |->^n by default."""
    if m.t2 > 2.0 * m.t1:
        raise NoiseModelError(f"t2={m.t2!r} exceeds 2*t1={2.0 * m.t1!r}")
    n = c.n_qubits
    start = initial if initial is not None else minus_state(n)
    if start.n_qubits != n:
        raise InvalidSizeError(f"initial state of {start.n_qubits} qubits for {n}-qubit circuit")

    amplitudes = np.array(start.amplitudes)
    for layer in c.layers:
        for gate in layer:
            amplitudes = apply_gate(amplitudes, gate, n)
            p = m.p1 if len(gate.qubits) == 1 else m.p2
            if p > 0.0 and rng.random() < p:
                axes = random_pauli(len(gate.qubits), rng)
                amplitudes = _apply_pauli_string(amplitudes, gate.qubits, axes, n)
        amplitudes = _relax(amplitudes, m, rng, n)

    norm = float(np.linalg.norm(amplitudes))
    logger.debug(f"Trajectory finished with norm {norm!r} before renormalization")
    return Statevector(n_qubits=n, amplitudes=amplitudes / norm)


def trajectory_generators(seed, count: int) -> List[np.random.Generator]:
    """Independent generators for ``count`` trajectories, in trajectory-index order."""
    sequence = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return [np.random.default_rng(child) for child in sequence.spawn(count)]


def run_noisy_trajectories(
    c: Circuit, m: NoiseModel, count: int, seed
) -> List[Statevector]:
    """``count`` independent trajectories with per-trajectory seeded generators."""
    states = [
        run_noisy_trajectory(c, m, rng) for rng in trajectory_generators(seed, count)
    ]
    logger.info(f"Sampled {count} noisy trajectories on {c.n_qubits} qubits")
    return states
