"""
Local-Pauli classical shadows.

Each snapshot measures every qubit in a uniformly random X, Y or Z basis. The
dual operator of an outcome is the product of single-qubit factors
``3 |b><b| - I``; estimators average the per-snapshot weights
``Tr[O (x)_q dual_q]``.

Outcome indices combine basis and bit as ``2 * basis + bit`` with X=0, Y=1, Z=2.
"""

from __future__ import annotations

import logging
import math
from typing import Dict, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    ConfigurationError,
    InvalidSizeError,
    OperatorValidationError,
    ShadowSetError,
)
from .models.circuits import Circuit, NoiseModel, Statevector
from .models.experiments import SHADOW_REGION_CAP
from .models.pauli import PauliSum, PauliTerm, SupportedOperator
from .models.shadows import BASES, EstimatorResult, ShadowMeta, ShadowSet, Snapshot
from .noise import run_noisy_trajectory, trajectory_generators
from .pauli import apply_pauli_sum, group_by_weight, local_basis_coefficients

logger = logging.getLogger(__name__)

DENSITY_QUBIT_CAP = SHADOW_REGION_CAP
TABLE_QUBITS = 8
DEFAULT_POOL_SIZE = 256

_SQRT_HALF = 1.0 / math.sqrt(2.0)
_EIGENSTATES = np.array(
    [
        [[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]],
        [[_SQRT_HALF, 1j * _SQRT_HALF], [_SQRT_HALF, -1j * _SQRT_HALF]],
        [[1.0, 0.0], [0.0, 1.0]],
    ],
    dtype=complex,
)
# rotation mapping the eigenstate of bit b onto |b>
_ROTATIONS = _EIGENSTATES.conj()

DUAL_FACTORS = np.stack(
    [
        3.0 * np.outer(_EIGENSTATES[basis, bit], _EIGENSTATES[basis, bit].conj())
        - np.eye(2)
        for basis in range(3)
        for bit in range(2)
    ]
)

RngLike = Union[np.random.Generator, int, None]


def _as_generator(rng: RngLike) -> Tuple[np.random.Generator, Optional[int]]:
    if isinstance(rng, np.random.Generator):
        return rng, None
    return np.random.default_rng(rng), rng


def dual_factor(basis: Union[str, int], bit: int) -> np.ndarray:
    """``3 |b><b| - I`` for the eigenstate selected by ``bit`` (0 = +1 eigenstate)."""
    code = BASES.index(basis) if isinstance(basis, str) else int(basis)
    return DUAL_FACTORS[2 * code + int(bit)].copy()


def snapshot_weight(snap: Snapshot, term: PauliTerm) -> float:
    """``Tr[term * (x)_q dual_q]`` evaluated factor by factor."""
    if snap.n_qubits != term.string.n_qubits:
        raise InvalidSizeError(
            f"snapshot of {snap.n_qubits} qubits for a {term.string.n_qubits}-qubit term"
        )
    value = term.coeff
    for axis, basis, bit in zip(term.string.axes, snap.bases, snap.outcomes):
        if axis == "I":
            continue
        if axis != basis:
            return 0.0
        value *= -3.0 if bit == "1" else 3.0
    return float(value.real)


def _chunk_size(n: int) -> int:
    return int(min(65536, max(16, 2 ** max(0, 26 - n))))


def _sample_chunk(
    amplitudes: np.ndarray, bases: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    # qubit-by-qubit chain rule, one conditional state per distinct measured prefix
    count, n = bases.shape
    outcomes = np.empty((count, n), dtype=np.uint8)
    states = amplitudes.reshape(1, -1)
    group = np.zeros(count, dtype=np.int64)
    for qubit in range(n):
        keys, branch = np.unique(group * 3 + bases[:, qubit], return_inverse=True)
        branch = branch.reshape(-1)
        parents = states[keys // 3].reshape(len(keys), 2, -1)
        rotated = np.einsum("kab,kbr->kar", _ROTATIONS[keys % 3], parents)
        weights = np.sum(np.abs(rotated) ** 2, axis=2)
        p_one = weights[:, 1] / weights.sum(axis=1)
        bits = (rng.random(count) < p_one[branch]).astype(np.uint8)
        outcomes[:, qubit] = bits

        children, group = np.unique(branch * 2 + bits, return_inverse=True)
        group = group.reshape(-1)
        flat = rotated.reshape(2 * len(keys), -1)
        norms = np.sqrt(weights.reshape(-1)[children])
        states = flat[children] / norms[:, None]
    return outcomes


def _sample_outcomes(
    amplitudes: np.ndarray, bases: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """Born-rule outcomes of one pure state for each row of measurement bases."""
    count, n = bases.shape
    outcomes = np.empty((count, n), dtype=np.uint8)
    chunk = _chunk_size(n)
    for start in range(0, count, chunk):
        stop = start + chunk
        outcomes[start:stop] = _sample_chunk(amplitudes, bases[start:stop], rng)
    return outcomes


def _random_bases(s: int, n: int, rng: np.random.Generator) -> np.ndarray:
    if s < 1:
        raise InvalidSizeError(f"need at least one snapshot, got {s}")
    return rng.integers(0, 3, size=(s, n), dtype=np.uint8)


def _flip_readout(
    outcomes: np.ndarray, e_ro: float, rng: np.random.Generator
) -> np.ndarray:
    if e_ro == 0.0:
        return outcomes
    flips = rng.random(outcomes.shape) < e_ro
    return outcomes ^ flips.astype(np.uint8)


def _noisy_source(eta: Optional[float]) -> str:
    return "noisy" if eta is None else f"noisy({eta:g})"


def sample_snapshots(psi: Statevector, s: int, rng: RngLike) -> ShadowSet:
    """Draw ``s`` snapshots of ``psi`` with uniformly random local Pauli bases."""
    generator, seed = _as_generator(rng)
    bases = _random_bases(s, psi.n_qubits, generator)
    outcomes = _sample_outcomes(np.asarray(psi.amplitudes), bases, generator)
    logger.debug(f"Sampled {s} snapshots of a {psi.n_qubits}-qubit state")
    return ShadowSet(
        n_qubits=psi.n_qubits,
        bases=bases,
        outcomes=outcomes,
        meta=ShadowMeta(seed=seed, source="ideal", params={"s": s}),
    )


def sample_snapshots_noisy(
    c: Circuit,
    m: NoiseModel,
    s: int,
    rng: RngLike,
    eta: Optional[float] = None,
) -> ShadowSet:
    """One fresh noisy trajectory per snapshot, followed by readout bit flips."""
    generator, seed = _as_generator(rng)
    n = c.n_qubits
    bases = _random_bases(s, n, generator)
    outcomes = np.empty((s, n), dtype=np.uint8)
    for index in range(s):
        trajectory = run_noisy_trajectory(c, m, generator)
        outcomes[index] = _sample_outcomes(
            np.asarray(trajectory.amplitudes), bases[index : index + 1], generator
        )[0]
    outcomes = _flip_readout(outcomes, m.e_ro, generator)
    logger.debug(f"Sampled {s} snapshots from fresh noisy trajectories")
    return ShadowSet(
        n_qubits=n,
        bases=bases,
        outcomes=outcomes,
        meta=ShadowMeta(
            seed=seed,
            source=_noisy_source(eta),
            params={"s": s, "trajectories": s, **m.model_dump()},
        ),
    )


class IdealSnapshotSource:
    """Snapshots of a fixed pure state."""

    def __init__(self, psi: Statevector):
        self.psi = psi

    @property
    def n_qubits(self) -> int:
        return self.psi.n_qubits

    def sample(self, s: int, rng: RngLike) -> ShadowSet:
        return sample_snapshots(self.psi, s, rng)


class NoisySnapshotSource:
    """Snapshots of the noisy state prepared by ``circuit``.

    With ``trajectories`` set, a pool of that many trajectories is simulated once
    (seeded from ``seed``) and every snapshot measures a uniformly chosen member.
    With ``trajectories=None`` each snapshot gets its own fresh trajectory.
    """

    def __init__(
        self,
        circuit: Circuit,
        model: NoiseModel,
        trajectories: Optional[int] = DEFAULT_POOL_SIZE,
        seed=None,
        eta: Optional[float] = None,
    ):
        if trajectories is not None and trajectories < 1:
            raise ConfigurationError(f"trajectory pool needs at least one member, got {trajectories}")
        self.circuit = circuit
        self.model = model
        self.eta = eta
        self.pool = None
        if trajectories is not None:
            self.pool = [
                np.asarray(run_noisy_trajectory(circuit, model, generator).amplitudes)
                for generator in trajectory_generators(seed, trajectories)
            ]
            logger.info(
                f"Simulated a pool of {trajectories} noisy trajectories on "
                f"{circuit.n_qubits} qubits"
            )

    @property
    def n_qubits(self) -> int:
        return self.circuit.n_qubits

    def sample(self, s: int, rng: RngLike) -> ShadowSet:
        if self.pool is None:
            return sample_snapshots_noisy(self.circuit, self.model, s, rng, eta=self.eta)

        generator, seed = _as_generator(rng)
        n = self.n_qubits
        bases = _random_bases(s, n, generator)
        members = generator.integers(0, len(self.pool), size=s)
        outcomes = np.empty((s, n), dtype=np.uint8)
        for member in np.unique(members):
            rows = np.flatnonzero(members == member)
            outcomes[rows] = _sample_outcomes(self.pool[member], bases[rows], generator)
        outcomes = _flip_readout(outcomes, self.model.e_ro, generator)
        return ShadowSet(
            n_qubits=n,
            bases=bases,
            outcomes=outcomes,
            meta=ShadowMeta(
                seed=seed,
                source=_noisy_source(self.eta),
                params={
                    "s": s,
                    "trajectories": len(self.pool),
                    **self.model.model_dump(),
                },
            ),
        )

    def mixed_energy(self, h: PauliSum) -> float:
        """Energy of the trajectory-averaged state, without readout error."""
        if self.pool is None:
            raise ConfigurationError("no trajectory pool to average over")
        values = [
            float(np.vdot(amplitudes, apply_pauli_sum(h, amplitudes)).real)
            for amplitudes in self.pool
        ]
        return float(np.mean(values))


SnapshotSource = Union[IdealSnapshotSource, NoisySnapshotSource]


def _check_set(shadows: ShadowSet, n_qubits: int) -> None:
    if shadows.size == 0:
        raise ShadowSetError("cannot estimate from an empty snapshot set")
    if shadows.n_qubits != n_qubits:
        raise InvalidSizeError(
            f"snapshot set of {shadows.n_qubits} qubits for a {n_qubits}-qubit observable"
        )


def pauli_weights(shadows: ShadowSet, h: PauliSum) -> np.ndarray:
    """Per-snapshot weights ``sum_terms Tr[term * dual_s]`` of a Pauli sum."""
    _check_set(shadows, h.n_qubits)
    if not h.is_real:
        raise OperatorValidationError("shadow weights need real Pauli coefficients")

    codes = h.axis_codes().astype(np.int64)
    nonidentity = (codes != 0).astype(float)
    support_size = nonidentity.sum(axis=1)
    scale = h.coefficients().real * 3.0**support_size
    one_hot = [(codes == axis + 1).astype(float) for axis in range(3)]

    weights = np.empty(shadows.size)
    chunk = max(1, 2**22 // max(1, len(codes)))
    for start in range(0, shadows.size, chunk):
        bases = shadows.bases[start : start + chunk]
        outcomes = shadows.outcomes[start : start + chunk].astype(float)
        matched = sum(
            one_hot[axis] @ (bases == axis).T.astype(float) for axis in range(3)
        )
        parity = (nonidentity @ outcomes.T).astype(np.int64) % 2
        values = np.where(matched == support_size[:, None], 1.0 - 2.0 * parity, 0.0)
        weights[start : start + chunk] = scale @ values
    return weights


def _tree_weights(
    matrix: np.ndarray, patterns: np.ndarray, rows: np.ndarray, out: np.ndarray
) -> None:
    # matrix acts on the trailing ``remaining`` pattern columns
    remaining = int(round(np.log2(matrix.shape[0])))
    offset = patterns.shape[1] - remaining
    if remaining <= 3 or (remaining <= TABLE_QUBITS and 6**remaining <= 64 * len(rows)):
        table = local_basis_coefficients(matrix, DUAL_FACTORS)
        out[rows] = np.real(table[tuple(patterns[rows, offset:].T)])
        return

    half = 2 ** (remaining - 1)
    tensor = matrix.reshape(2, half, 2, half)
    column = patterns[rows, offset]
    for outcome in np.unique(column):
        reduced = np.einsum("ba,axby->xy", DUAL_FACTORS[outcome], tensor)
        _tree_weights(reduced, patterns, rows[column == outcome], out)


def operator_weights(shadows: ShadowSet, op: SupportedOperator) -> np.ndarray:
    """Per-snapshot weights ``Tr[op * (x)_{q in support} dual_q]`` of a dense block."""
    if any(q < 0 or q >= shadows.n_qubits for q in op.support):
        raise InvalidSizeError(
            f"support {op.support} outside a {shadows.n_qubits}-qubit snapshot set"
        )
    if op.n_qubits == 0:
        return np.full(shadows.size, float(np.real(op.matrix[0, 0])))

    support = list(op.support)
    patterns = (
        2 * shadows.bases[:, support].astype(np.int64)
        + shadows.outcomes[:, support].astype(np.int64)
    )
    out = np.empty(shadows.size)
    _tree_weights(np.asarray(op.matrix), patterns, np.arange(shadows.size), out)
    return out


def dense_weights(shadows: ShadowSet, ops: Sequence[SupportedOperator]) -> np.ndarray:
    if shadows.size == 0:
        raise ShadowSetError("cannot estimate from an empty snapshot set")
    weights = np.zeros(shadows.size)
    for op in ops:
        weights += operator_weights(shadows, op)
    return weights


def summarize(weights: np.ndarray) -> EstimatorResult:
    """Mean and standard error of per-snapshot weights (zero error for one snapshot)."""
    s = weights.shape[0]
    if s == 0:
        raise ShadowSetError("cannot summarize an empty weight vector")
    mean = float(np.sum(weights) / s)
    std_err = float(math.sqrt(np.var(weights, ddof=1) / s)) if s > 1 else 0.0
    return EstimatorResult(mean=mean, std_err=std_err, s_used=s)


def estimate(
    shadows: ShadowSet, obs: Union[PauliSum, Sequence[SupportedOperator]]
) -> EstimatorResult:
    """Unbiased shadow estimate of ``obs`` (a Pauli sum or a list of dense blocks)."""
    if isinstance(obs, PauliSum):
        weights = pauli_weights(shadows, obs)
    else:
        weights = dense_weights(shadows, obs)
    return summarize(weights)


class VarianceBreakdown(NamedTuple):
    contributions: Dict[int, float]
    total: float


def weight_resolved_variance(shadows: ShadowSet, h: PauliSum) -> VarianceBreakdown:
    """Split the estimator variance of ``h`` into Pauli-weight contributions.

    ``C_w = Var(P_w) + sum_{w' != w} Cov(P_w, P_w')`` over snapshots, divided by
    ``S`` so that ``sum_w C_w`` equals the squared standard error of ``estimate``.
    """
    _check_set(shadows, h.n_qubits)
    groups = group_by_weight(h)
    if not groups:
        return VarianceBreakdown(contributions={}, total=0.0)
    if shadows.size < 2:
        return VarianceBreakdown(contributions={w: 0.0 for w in groups}, total=0.0)

    stacked = np.stack([pauli_weights(shadows, group) for group in groups.values()])
    covariance = np.atleast_2d(np.cov(stacked, ddof=1)) / shadows.size
    contributions = {
        w: float(value) for w, value in zip(groups, covariance.sum(axis=1))
    }
    return VarianceBreakdown(
        contributions=contributions, total=float(sum(contributions.values()))
    )


def required_snapshots(var_ref: float, s_ref: int, delta_e: float, f: float) -> int:
    """Snapshots needed to push the standard error down to ``f * delta_e``.

    The reference variance ``var_ref`` was measured with ``s_ref`` snapshots and
    scales as ``1 / S``.
    """
    if min(var_ref, s_ref, delta_e, f) <= 0:
        raise ConfigurationError(
            f"forecast inputs must be positive: var_ref={var_ref!r}, s_ref={s_ref!r}, "
            f"delta_e={delta_e!r}, f={f!r}"
        )
    ratio = var_ref * s_ref / (f * delta_e) ** 2
    # absorb round-off so exact ratios are not bumped to the next integer
    return max(1, math.ceil(ratio * (1.0 - 1e-12)))


def worst_case_prefactor(k: Optional[int] = None, layers: Optional[int] = None) -> int:
    """``4^k`` for a ``k``-local observable or ``16^l`` after ``l`` MERA layers."""
    if (k is None) == (layers is None):
        raise ConfigurationError("give exactly one of a locality or a layer count")
    if k is not None:
        return 4**k
    return 16**layers


def worst_case_locality(layers: int) -> int:
    """Largest qubit support of a transformed nearest-neighbour term: ``3 * 2^l``."""
    return 3 * 2**layers


def worst_case_bound(
    m_obs: int,
    eps: float,
    k: Optional[int] = None,
    layers: Optional[int] = None,
    max_norm: float = 1.0,
) -> int:
    """Loose shadow budget ``log(m_obs) / eps^2 * prefactor * max_norm^2``."""
    if eps <= 0:
        raise ConfigurationError(f"accuracy eps must be positive, got {eps!r}")
    if m_obs < 1:
        raise ConfigurationError(f"need at least one observable, got {m_obs}")
    bound = math.log(m_obs) / eps**2 * worst_case_prefactor(k, layers) * max_norm**2
    return math.ceil(bound)


def _dual_sum(patterns: np.ndarray, rows: np.ndarray, qubit: int) -> np.ndarray:
    column = patterns[rows, qubit]
    if qubit == patterns.shape[1] - 1:
        counts = np.bincount(column, minlength=6).astype(float)
        return np.tensordot(counts, DUAL_FACTORS, axes=1)
    total = None
    for outcome in np.unique(column):
        block = np.kron(
            DUAL_FACTORS[outcome], _dual_sum(patterns, rows[column == outcome], qubit + 1)
        )
        total = block if total is None else total + block
    return total


def shadow_density_matrix(
    shadows: ShadowSet, qubits: Optional[Sequence[int]] = None
) -> np.ndarray:
    """Pseudo density operator ``(1/S) sum_s (x)_q dual_q`` (up to 10 qubits).

    Args:
        shadows: Snapshot set.
        qubits: Optional ordered subset; the result is then the reduced operator
            on those qubits (every traced dual factor has unit trace).
    """
    if shadows.size == 0:
        raise ShadowSetError("cannot build a density operator from an empty set")
    columns = list(range(shadows.n_qubits)) if qubits is None else [int(q) for q in qubits]
    if not columns or len(set(columns)) != len(columns):
        raise InvalidSizeError(f"qubit subset must be non-empty and distinct, got {columns}")
    if min(columns) < 0 or max(columns) >= shadows.n_qubits:
        raise InvalidSizeError(f"qubit subset {columns} outside a {shadows.n_qubits}-qubit set")
    if len(columns) > DENSITY_QUBIT_CAP:
        raise InvalidSizeError(
            f"shadow density operator capped at {DENSITY_QUBIT_CAP} qubits, got {len(columns)}"
        )
    bases = shadows.bases[:, columns].astype(np.int64)
    patterns = 2 * bases + shadows.outcomes[:, columns].astype(np.int64)
    return _dual_sum(patterns, np.arange(shadows.size), 0) / shadows.size


class RegionDensities:
    """Reduced pseudo densities of one snapshot set, built once per qubit region."""

    def __init__(self, shadows: ShadowSet):
        self.shadows = shadows
        self._cache: Dict[Tuple[int, ...], np.ndarray] = {}

    def __call__(self, region: Sequence[int]) -> np.ndarray:
        key = tuple(int(q) for q in region)
        if key not in self._cache:
            self._cache[key] = shadow_density_matrix(self.shadows, key)
        return self._cache[key]

    def __len__(self) -> int:
        return len(self._cache)
