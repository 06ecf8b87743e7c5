import unittest

import numpy as np

from surquest.utils.hybrid_mera.annealing import build_annealing_circuit
from surquest.utils.hybrid_mera.errors import InvalidSizeError, NumericalError
from surquest.utils.hybrid_mera.models.circuits import AnnealingSchedule, Circuit, RXGate, RZZGate
from surquest.utils.hybrid_mera.models.pauli import PauliSum
from surquest.utils.hybrid_mera.oracle import (
    dense_ground_state,
    relative_error,
    tfim_free_fermion_energy,
    two_qubit_depth,
)
from surquest.utils.hybrid_mera.pauli import apply_pauli_sum, build_tfim


class TestDenseGroundState(unittest.TestCase):

    def test_two_sites(self):
        """The open two-site chain has E0 = -sqrt(5)."""
        truth = dense_ground_state(build_tfim(2, -1.0, 1.0, "open"))

        self.assertAlmostEqual(truth.e0, -np.sqrt(5.0), places=10)

    def test_single_field(self):
        """A lone X has ground energy -1."""
        self.assertAlmostEqual(dense_ground_state(PauliSum.parse("1.0 * X")).e0, -1.0, places=12)

    def test_eigenvector(self):
        """The returned vector is an eigenvector for e0."""
        h = build_tfim(6, -1.0, 0.8)
        truth = dense_ground_state(h)
        psi = truth.vector.amplitudes

        assert np.linalg.norm(apply_pauli_sum(h, psi) - truth.e0 * psi) < 1e-9

    def test_lanczos_branch(self):
        """Above ten qubits the sparse solver agrees with the free-fermion value."""
        truth = dense_ground_state(build_tfim(12, -1.0, 1.0, "open"))

        self.assertAlmostEqual(truth.e0, tfim_free_fermion_energy(12, -1.0, 1.0), places=8)

    def test_cap(self):
        """Exact diagonalization stops at fourteen qubits."""
        with self.assertRaises(InvalidSizeError):
            dense_ground_state(build_tfim(16, -1.0, 1.0))


class TestFreeFermion(unittest.TestCase):

    def test_agrees_with_dense(self):
        """Both oracles agree on open chains, through the dense and the Lanczos branch."""
        for n in (2, 4, 8, 12):
            for j, lam in ((-1.0, 1.0), (-0.7, 1.3), (1.0, 0.4)):
                with self.subTest(n=n, j=j, lam=lam):
                    dense = dense_ground_state(build_tfim(n, j, lam, "open")).e0
                    self.assertAlmostEqual(tfim_free_fermion_energy(n, j, lam), dense, places=9)

    def test_classical_limit(self):
        """Without field the energy is -|j| (n - 1)."""
        self.assertAlmostEqual(tfim_free_fermion_energy(5, -1.3, 0.0), -5.2, places=10)

    def test_paramagnetic_limit(self):
        """Without coupling the energy is -|lam| n."""
        self.assertAlmostEqual(tfim_free_fermion_energy(5, 0.0, 0.6), -3.0, places=10)

    def test_too_small(self):
        """The oracle needs a chain."""
        with self.assertRaises(InvalidSizeError):
            tfim_free_fermion_energy(1, -1.0, 1.0)


class TestMetrics(unittest.TestCase):

    def test_relative_error(self):
        """Relative error is symmetric in the sign of the deviation."""
        assert relative_error(-9.0, -10.0) == 0.1
        assert relative_error(-11.0, -10.0) == 0.1
        assert relative_error(-10.0, -10.0) == 0.0

    def test_zero_reference(self):
        """A zero reference energy has no relative error."""
        with self.assertRaises(NumericalError):
            relative_error(1.0, 0.0)

    def test_depth_of_trotter_step(self):
        """An even and an odd bond layer on four sites have depth two."""
        even = (RZZGate(qubits=(0, 1), theta=0.1), RZZGate(qubits=(2, 3), theta=0.1))
        odd = (RZZGate(qubits=(1, 2), theta=0.2), RZZGate(qubits=(3, 0), theta=0.2))
        field = tuple(RXGate(qubits=(q,), phi=0.3) for q in range(4))

        assert two_qubit_depth(Circuit(n_qubits=4, layers=(even, field, odd))) == 2

    def test_depth_ignores_single_qubit_gates(self):
        """Single-qubit layers are free."""
        field = tuple(RXGate(qubits=(q,), phi=0.3) for q in range(4))

        assert two_qubit_depth(Circuit(n_qubits=4, layers=(field, field))) == 0
        assert two_qubit_depth(Circuit(n_qubits=4)) == 0

    def test_disjoint_gates_share_a_level(self):
        """Gates on disjoint qubits count once."""
        layer = (RZZGate(qubits=(0, 1), theta=0.1), RZZGate(qubits=(2, 3), theta=0.1))

        assert two_qubit_depth(Circuit(n_qubits=4, layers=(layer,))) == 1

    def test_annealing_depth(self):
        """K merged Trotter steps need 2K + 1 bond layers."""
        for steps in (1, 3, 10):
            circuit = build_annealing_circuit(AnnealingSchedule(t_final=float(steps), dt=1.0), 6)
            assert two_qubit_depth(circuit) == 2 * steps + 1


if __name__ == "__main__":
    unittest.main()
