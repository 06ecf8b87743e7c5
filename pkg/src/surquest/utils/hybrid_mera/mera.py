"""
Untruncated periodic MERA: construction, application to states, Heisenberg
transformation of the Hamiltonian and energies with Euclidean gradients.

The network unitary is ``U = G_M ... G_1`` with ``G_1`` the first tensor in
application order; the transformed Hamiltonian is ``U^dagger H U``.
"""

from __future__ import annotations

import logging
from typing import List, Sequence, Union

import numpy as np
from scipy.stats import unitary_group

from .annealing import apply_block, expectation
from .errors import ConfigurationError, InvalidSizeError, NumericalError
from .models.circuits import Statevector
from .models.mera import GradientSet, Mera, MeraTensor, TransformedOperator, mera_wiring
from .models.pauli import PauliSum, SupportedOperator
from .models.shadows import EstimatorResult, ShadowSet
from .pauli import DENSE_QUBIT_CAP, PAULI_MATRICES, apply_pauli_sum, to_dense
from .shadows import RegionDensities, estimate

logger = logging.getLogger(__name__)


def _check_divisible(n: int, l_count: int) -> None:
    if l_count < 1:
        raise InvalidSizeError(f"a MERA needs at least one layer, got {l_count}")
    if n < 2 or n % 2**l_count:
        raise InvalidSizeError(f"{n} sites are not divisible by 2^{l_count}")


def _build(n: int, l_count: int, make_matrix) -> Mera:
    tensors = tuple(
        MeraTensor(kind=kind, layer=layer, block=block, matrix=make_matrix(2 ** len(block)))
        for layer, kind, block in mera_wiring(n, l_count)
    )
    return Mera(n_sites=n, n_layers=l_count, tensors=tensors)


def identity_mera(n: int, l_count: int) -> Mera:
    """MERA whose every tensor is the identity."""
    _check_divisible(n, l_count)
    return _build(n, l_count, lambda dim: np.eye(dim, dtype=complex))


def random_mera(n: int, l_count: int, rng) -> Mera:
    """MERA with Haar-random unitary tensors."""
    _check_divisible(n, l_count)
    generator = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    return _build(n, l_count, lambda dim: unitary_group.rvs(dim, random_state=generator))


def support_after_layers(initial_links: int, layers: int) -> int:
    """Worst-case qubit support of a term spanning ``initial_links`` links after ``layers`` layers.

    Each layer grows the link count by at most one up to three links, and every
    link of layer ``l`` carries ``2^l`` qubits.
    """
    if initial_links not in (1, 2, 3):
        raise ConfigurationError(f"initial link count must be 1, 2 or 3, got {initial_links}")
    if layers < 0:
        raise ConfigurationError(f"layer count must be non-negative, got {layers}")
    return min(3, initial_links + layers) * 2**layers


def _check_sites(m: Mera, n_qubits: int, what: str) -> None:
    if m.n_sites != n_qubits:
        raise InvalidSizeError(f"{what} of {n_qubits} qubits for a {m.n_sites}-site MERA")


def _apply_tensors(amplitudes: np.ndarray, matrices: Sequence[np.ndarray], m: Mera) -> np.ndarray:
    tensor = amplitudes.reshape((2,) * m.n_sites)
    for layout, matrix in zip(m.tensors, matrices):
        tensor = apply_block(tensor, matrix, layout.block)
    return tensor.reshape(-1)


def apply_mera(psi: Statevector, m: Mera) -> Statevector:
    """``U |psi>``, tensors applied in stored order (coarse to fine)."""
    _check_sites(m, psi.n_qubits, "state")
    amplitudes = _apply_tensors(np.asarray(psi.amplitudes), m.matrices, m)
    return Statevector(n_qubits=psi.n_qubits, amplitudes=amplitudes)


def _expand(tensor: np.ndarray, support: List[int], new_support: List[int]) -> np.ndarray:
    """Pad an operator tensor (rows then columns) with identities onto ``new_support``."""
    added = [q for q in new_support if q not in support]
    if not added:
        return tensor
    k = len(support)
    full = len(new_support)
    matrix = np.kron(tensor.reshape(2**k, 2**k), np.eye(2 ** len(added)))
    order = support + added
    perm = [order.index(q) for q in new_support]
    return np.transpose(
        matrix.reshape((2,) * (2 * full)), perm + [p + full for p in perm]
    )


def _conjugate_term(m: Mera, support: List[int], matrix: np.ndarray):
    """``U^dagger O U`` for one term, contracting only tensors inside its light cone."""
    tensor = matrix.reshape((2,) * (2 * len(support)))
    for layout in reversed(m.tensors):
        if layout.is_identity or not set(layout.block) & set(support):
            continue
        new_support = sorted(set(support) | set(layout.block))
        tensor = _expand(tensor, support, new_support)
        support = new_support
        k = len(support)
        rows = [support.index(q) for q in layout.block]
        gate = np.asarray(layout.matrix)
        tensor = apply_block(tensor, gate.conj().T, rows)
        tensor = apply_block(tensor, gate.T, [r + k for r in rows])
    dim = 2 ** len(support)
    return tuple(support), tensor.reshape(dim, dim)


def _term_matrix(axes: str, coeff: complex):
    support = [q for q, axis in enumerate(axes) if axis != "I"]
    matrix = np.array([[coeff]], dtype=complex)
    for q in support:
        matrix = np.kron(matrix, PAULI_MATRICES[axes[q]])
    return support, matrix


def transform_operator(m: Mera, h: PauliSum) -> TransformedOperator:
    """Heisenberg-transform every term of ``h`` through the MERA."""
    _check_sites(m, h.n_qubits, "Hamiltonian")
    terms = []
    for term in h.terms:
        support, matrix = _term_matrix(term.string.axes, term.coeff)
        support, matrix = _conjugate_term(m, support, matrix)
        # restore exact Hermiticity lost to round-off
        matrix = 0.5 * (matrix + matrix.conj().T)
        terms.append(SupportedOperator(support=support, matrix=matrix))

    transformed = TransformedOperator(n_sites=m.n_sites, n_layers=m.n_layers, terms=tuple(terms))
    logger.debug(
        f"Transformed {len(terms)} terms through {m.n_layers} layers, "
        f"largest support {transformed.max_support}"
    )
    return transformed


def transformed_expectation(t: TransformedOperator, psi: Statevector) -> float:
    """``sum_terms <psi| term |psi>`` evaluated block by block."""
    if psi.n_qubits != t.n_sites:
        raise InvalidSizeError(f"state of {psi.n_qubits} qubits for {t.n_sites} sites")
    state = psi.tensor()
    total = 0.0
    for term in t.terms:
        if term.n_qubits == 0:
            total += float(term.matrix[0, 0].real)
            continue
        applied = apply_block(state, term.matrix, term.support)
        total += float(np.vdot(state, applied).real)
    return total


def _raw_energy(amplitudes: np.ndarray, matrices: Sequence[np.ndarray], m: Mera, h: PauliSum) -> float:
    return expectation(_apply_tensors(amplitudes, matrices, m), h)


def energy_exact(m: Mera, psi: Statevector, h: PauliSum) -> float:
    """``<psi| U^dagger H U |psi>``."""
    _check_sites(m, psi.n_qubits, "state")
    _check_sites(m, h.n_qubits, "Hamiltonian")
    return _raw_energy(np.asarray(psi.amplitudes), m.matrices, m, h)


def energy_shadow(m: Mera, shadows: ShadowSet, h: PauliSum) -> EstimatorResult:
    """Shadow estimate of the transformed Hamiltonian, term blocks contracted with the duals."""
    _check_sites(m, shadows.n_qubits, "snapshot set")
    return estimate(shadows, list(transform_operator(m, h).terms))


def _conjugate_density(
    rho: np.ndarray, matrix: np.ndarray, block: Sequence[int], n: int, adjoint: bool
) -> np.ndarray:
    """``G rho G^dagger`` (or ``G^dagger rho G`` when ``adjoint``) on a (2,)*2n tensor."""
    gate = matrix.conj().T if adjoint else matrix
    rows = list(block)
    tensor = apply_block(rho, gate, rows)
    return apply_block(tensor, gate.conj(), [q + n for q in rows])


def _forward_density(rho: np.ndarray, matrices: Sequence[np.ndarray], m: Mera) -> np.ndarray:
    n = m.n_sites
    tensor = rho.reshape((2,) * (2 * n))
    for layout, matrix in zip(m.tensors, matrices):
        tensor = _conjugate_density(tensor, matrix, layout.block, n, adjoint=False)
    dim = 2**n
    return tensor.reshape(dim, dim)


def _real_energy(value: complex) -> float:
    if abs(value.imag) > 1e-8 * max(1.0, abs(value.real)):
        raise NumericalError(f"density energy has imaginary part {value.imag!r}")
    return float(value.real)


def _density_energy(rho_out: np.ndarray, h: PauliSum) -> float:
    return _real_energy(np.trace(apply_pauli_sum(h, rho_out)))


def energy_from_density(m: Mera, rho: np.ndarray, h: PauliSum) -> float:
    """``Tr[rho U^dagger H U]`` for a (pseudo) density matrix ``rho``."""
    _check_sites(m, h.n_qubits, "Hamiltonian")
    dim = 2**m.n_sites
    if rho.shape != (dim, dim):
        raise InvalidSizeError(f"density matrix of shape {rho.shape} for {m.n_sites} sites")
    return _density_energy(_forward_density(np.asarray(rho, dtype=complex), m.matrices, m), h)


def _block_first(tensor: np.ndarray, block: Sequence[int]) -> np.ndarray:
    k = len(block)
    moved = np.moveaxis(tensor, list(block), list(range(k)))
    return moved.reshape(2**k, -1)


def _pure_gradient(m: Mera, amplitudes: np.ndarray, h: PauliSum) -> GradientSet:
    n = m.n_sites
    matrices = [np.asarray(matrix) for matrix in m.matrices]
    phi = _apply_tensors(amplitudes, matrices, m)
    chi = apply_pauli_sum(h, phi)
    energy = float(np.vdot(phi, chi).real)

    phi = phi.reshape((2,) * n)
    chi = chi.reshape((2,) * n)
    gradients: List[np.ndarray] = [None] * len(matrices)
    for index in range(len(matrices) - 1, -1, -1):
        block = m.tensors[index].block
        adjoint = matrices[index].conj().T
        phi = apply_block(phi, adjoint, block)
        gradients[index] = _block_first(chi, block) @ _block_first(phi, block).conj().T
        chi = apply_block(chi, adjoint, block)
    return GradientSet(matrices=gradients, energy=energy)


def _partial_trace_product(b: np.ndarray, sigma: np.ndarray, block: Sequence[int], n: int) -> np.ndarray:
    """``Tr_rest[B sigma]`` on ``block`` for two (2,)*2n operator tensors."""
    k = len(block)
    dim = 2**n
    rows = list(block)
    b_rows = np.moveaxis(b, rows, list(range(k))).reshape(2**k, dim // 2**k, dim)
    sigma_cols = np.moveaxis(sigma, [q + n for q in rows], list(range(n, n + k)))
    sigma_cols = sigma_cols.reshape(dim, 2**k, dim // 2**k)
    return np.einsum("irm,mjr->ij", b_rows, sigma_cols)


def _region_gradient(
    blocks: Sequence[Sequence[int]],
    matrices: Sequence[np.ndarray],
    rho: np.ndarray,
    operator: np.ndarray,
    k: int,
):
    """Energy ``Tr[B G rho G^dagger]`` and its tensor gradients on a ``k``-qubit region.

    ``blocks`` index into the region and are listed in application order;
    ``operator`` is a (2,)*2k tensor.
    """
    dim = 2**k
    shape = (2,) * (2 * k)
    sigma = np.asarray(rho, dtype=complex).reshape(shape)
    for block, matrix in zip(blocks, matrices):
        sigma = _conjugate_density(sigma, matrix, block, k, adjoint=False)
    energy = _real_energy(np.trace(operator.reshape(dim, dim) @ sigma.reshape(dim, dim)))

    b = operator
    gradients: List[np.ndarray] = [None] * len(matrices)
    for index in range(len(matrices) - 1, -1, -1):
        block = blocks[index]
        gradients[index] = _partial_trace_product(b, sigma, block, k) @ matrices[index]
        b = _conjugate_density(b, matrices[index], block, k, adjoint=True)
        sigma = _conjugate_density(sigma, matrices[index], block, k, adjoint=True)
    return gradients, energy


def _density_gradient(m: Mera, rho: np.ndarray, h: PauliSum) -> GradientSet:
    n = m.n_sites
    if n > DENSE_QUBIT_CAP:
        raise InvalidSizeError(f"density gradients capped at {DENSE_QUBIT_CAP} sites, got {n}")
    operator = np.asarray(to_dense(h, DENSE_QUBIT_CAP).matrix).reshape((2,) * (2 * n))
    gradients, energy = _region_gradient(
        [layout.block for layout in m.tensors],
        [np.asarray(matrix) for matrix in m.matrices],
        rho,
        operator,
        n,
    )
    return GradientSet(matrices=gradients, energy=energy)


def light_cone(m: Mera, support: Sequence[int]):
    """Indices (application order) of the tensors that can reach ``support``, and their region.

    Tensors outside the cone commute with the conjugated term and cancel in
    ``U^dagger O U``; identity tensors stay inside because their gradient is not zero.
    """
    region = set(support)
    cone = []
    for index in range(len(m.tensors) - 1, -1, -1):
        block = m.tensors[index].block
        if region & set(block):
            cone.append(index)
            region |= set(block)
    return cone[::-1], sorted(region)


def _shadow_gradient(m: Mera, densities: RegionDensities, h: PauliSum) -> GradientSet:
    """Gradient of the shadow estimator, one light-cone region per Hamiltonian term.

    Each term only sees the reduced pseudo density of the snapshots on its
    region, so the cost grows linearly with the chain.
    """
    matrices = [np.asarray(matrix) for matrix in m.matrices]
    gradients = [np.zeros_like(matrix, dtype=complex) for matrix in matrices]
    energy = 0.0
    for term in h.terms:
        support, matrix = _term_matrix(term.string.axes, term.coeff)
        if not support:
            energy += float(matrix[0, 0].real)
            continue
        cone, region = light_cone(m, support)
        operator = _expand(matrix.reshape((2,) * (2 * len(support))), support, region)
        blocks = [[region.index(q) for q in m.tensors[index].block] for index in cone]
        term_gradients, term_energy = _region_gradient(
            blocks, [matrices[index] for index in cone], densities(region), operator, len(region)
        )
        for index, g in zip(cone, term_gradients):
            gradients[index] += g
        energy += term_energy
    logger.debug(f"Shadow gradient over {len(densities)} light-cone regions")
    return GradientSet(matrices=gradients, energy=energy)


def gradient(
    m: Mera, source: Union[Statevector, ShadowSet, RegionDensities, np.ndarray], h: PauliSum
) -> GradientSet:
    """Euclidean gradient of the energy with respect to every tensor.

    The convention is ``dE = 2 Re <G_X, dX>`` for independent perturbations of each
    tensor. A ``ShadowSet`` source differentiates the empirical estimator term by
    term on the reduced pseudo density of each light cone (a ``RegionDensities``
    reuses those of a fixed pool); a 2-D array is taken as a density matrix.
    """
    _check_sites(m, h.n_qubits, "Hamiltonian")
    if isinstance(source, Statevector):
        _check_sites(m, source.n_qubits, "state")
        result = _pure_gradient(m, np.asarray(source.amplitudes), h)
    elif isinstance(source, (ShadowSet, RegionDensities)):
        densities = RegionDensities(source) if isinstance(source, ShadowSet) else source
        _check_sites(m, densities.shadows.n_qubits, "snapshot set")
        result = _shadow_gradient(m, densities, h)
    else:
        rho = np.asarray(source, dtype=complex)
        dim = 2**m.n_sites
        if rho.shape != (dim, dim):
            raise InvalidSizeError(f"density matrix of shape {rho.shape} for {m.n_sites} sites")
        result = _density_gradient(m, rho, h)

    if not all(np.all(np.isfinite(g)) for g in result.matrices) or not np.isfinite(result.energy):
        raise NumericalError("gradient evaluation produced non-finite values")
    return result
