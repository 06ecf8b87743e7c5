import unittest

import numpy as np
import scipy.linalg
from pydantic import ValidationError

from surquest.utils.hybrid_mera.annealing import (
    apply_circuit,
    build_annealing_circuit,
    energy,
    minus_state,
    run_annealing,
    schedule_angles,
    split_bonds,
)
from surquest.utils.hybrid_mera.errors import ConfigurationError, InvalidSizeError
from surquest.utils.hybrid_mera.models.circuits import (
    AnnealingSchedule,
    Circuit,
    RXGate,
    RZZGate,
    Statevector,
)
from surquest.utils.hybrid_mera.models.pauli import PauliSum
from surquest.utils.hybrid_mera.pauli import PAULI_MATRICES, build_tfim


def basis_state(n, index):
    amplitudes = np.zeros(2**n, dtype=complex)
    amplitudes[index] = 1.0
    return Statevector(n_qubits=n, amplitudes=amplitudes)


class TestSchedule(unittest.TestCase):

    def test_first_step_angles(self):
        """Midpoint angles of the first step for t_final=10, dt=0.1."""
        angles = schedule_angles(AnnealingSchedule(t_final=10.0, dt=0.1), 0)

        self.assertAlmostEqual(angles.theta_odd, -0.001, places=12)
        self.assertAlmostEqual(angles.phi, 0.1, places=12)
        self.assertAlmostEqual(angles.theta_even_half, -0.0005, places=12)
        self.assertAlmostEqual(angles.theta_even_merged, -0.002, places=12)

    def test_single_step_angles(self):
        """A single unit step samples J at t=0.5."""
        angles = schedule_angles(AnnealingSchedule(t_final=1.0, dt=1.0), 0)

        self.assertAlmostEqual(angles.theta_odd, -1.0, places=12)
        self.assertAlmostEqual(angles.phi, 1.0, places=12)

    def test_step_index_bounds(self):
        """Steps are indexed 0..n_steps - 1."""
        s = AnnealingSchedule(t_final=1.0, dt=0.5)
        with self.assertRaises(IndexError):
            schedule_angles(s, 2)

    def test_non_integral_steps(self):
        """t_final must be an integer multiple of dt."""
        with self.assertRaises(ValidationError):
            AnnealingSchedule(t_final=1.0, dt=0.3)

    def test_step_count(self):
        """Float ratios within tolerance round to an integer step count."""
        assert AnnealingSchedule(t_final=10.0, dt=0.1).n_steps == 100


class TestCircuit(unittest.TestCase):

    def test_bond_split(self):
        """Periodic n=4 puts the wrap bond into the odd set."""
        even, odd = split_bonds(4, "periodic")

        assert even == [(0, 1), (2, 3)]
        assert odd == [(1, 2), (3, 0)]

    def test_odd_periodic_rejected(self):
        """The even/odd split needs an even periodic chain."""
        with self.assertRaises(ConfigurationError):
            build_annealing_circuit(AnnealingSchedule(t_final=1.0, dt=0.5), 5, "periodic")

    def test_single_step_layers(self):
        """One step is even half, field half, odd, field half, even half."""
        s = AnnealingSchedule(t_final=1.0, dt=1.0)
        circuit = build_annealing_circuit(s, 4)
        angles = schedule_angles(s, 0)

        kinds = [layer[0].kind for layer in circuit.layers]
        assert kinds == ["rzz", "rx", "rzz", "rx", "rzz"]
        assert circuit.layers[0][0].theta == angles.theta_even_half
        assert circuit.layers[-1][0].theta == angles.theta_even_half
        assert circuit.count("rzz") == 6
        assert circuit.count("rx") == 8

    def test_merged_even_layer(self):
        """Two steps share one merged even layer."""
        s = AnnealingSchedule(t_final=2.0, dt=1.0)
        circuit = build_annealing_circuit(s, 4)

        assert len(circuit.layers) == 9
        assert circuit.layers[4][0].theta == schedule_angles(s, 0).theta_even_merged

    def test_zero_coupling(self):
        """With J identically zero only field rotations remain."""
        s = AnnealingSchedule(t_final=1.0, dt=0.5, j_final=0.0)
        circuit = build_annealing_circuit(s, 4)

        assert circuit.count("rzz") == 0
        assert run_annealing(s, 4).fidelity(minus_state(4)) > 1 - 1e-12

    def test_open_odd_chain(self):
        """Open chains of any length are accepted."""
        circuit = build_annealing_circuit(AnnealingSchedule(t_final=1.0, dt=0.5), 3, "open")

        bonds = {gate.qubits for gate in circuit.gates if gate.kind == "rzz"}
        assert bonds == {(0, 1), (1, 2)}

    def test_merged_matches_unmerged(self):
        """Merging consecutive even half layers does not change the state."""
        s = AnnealingSchedule(t_final=2.0, dt=0.25)
        n = 4
        even, odd = split_bonds(n, "periodic")
        layers = []
        for k in range(s.n_steps):
            a = schedule_angles(s, k)
            half = tuple(RZZGate(qubits=b, theta=a.theta_even_half) for b in even)
            field = tuple(RXGate(qubits=(q,), phi=a.phi) for q in range(n))
            middle = tuple(RZZGate(qubits=b, theta=a.theta_odd) for b in odd)
            layers += [half, field, middle, field, half]
        unmerged = apply_circuit(minus_state(n), Circuit(n_qubits=n, layers=tuple(layers)))

        assert run_annealing(s, n).fidelity(unmerged) > 1 - 1e-12

    def test_matches_matrix_exponentials(self):
        """A single step on two sites equals the product of dense exponentials."""
        s = AnnealingSchedule(t_final=1.0, dt=1.0)
        a = schedule_angles(s, 0)
        zz = np.kron(PAULI_MATRICES["Z"], PAULI_MATRICES["Z"])
        xx = np.kron(PAULI_MATRICES["X"], np.eye(2)) + np.kron(np.eye(2), PAULI_MATRICES["X"])
        even_half = scipy.linalg.expm(-0.5j * a.theta_even_half * zz)
        odd = scipy.linalg.expm(-0.5j * a.theta_odd * zz)
        field = scipy.linalg.expm(-0.5j * a.phi * xx)
        unitary = even_half @ field @ odd @ field @ even_half

        expected = unitary @ minus_state(2).amplitudes
        psi = run_annealing(s, 2)

        assert np.allclose(psi.amplitudes, expected, atol=1e-12)


class TestStatevector(unittest.TestCase):

    def test_rx_pi(self):
        """RX(pi)|0> = -i|1>."""
        circuit = Circuit(n_qubits=1, layers=((RXGate(qubits=(0,), phi=np.pi),),))

        psi = apply_circuit(basis_state(1, 0), circuit)

        assert np.allclose(psi.amplitudes, [0.0, -1j])

    def test_rzz_phase(self):
        """RZZ on |00> multiplies by exp(-i theta / 2)."""
        theta = 0.7
        circuit = Circuit(n_qubits=2, layers=((RZZGate(qubits=(0, 1), theta=theta),),))

        psi = apply_circuit(basis_state(2, 0), circuit)

        assert np.allclose(psi.amplitudes, [np.exp(-0.5j * theta), 0, 0, 0])

    def test_empty_circuit(self):
        """An empty circuit leaves the state unchanged."""
        psi = minus_state(3)

        assert np.array_equal(apply_circuit(psi, Circuit(n_qubits=3)).amplitudes, psi.amplitudes)

    def test_size_mismatch(self):
        """State and circuit sizes must agree."""
        with self.assertRaises(InvalidSizeError):
            apply_circuit(minus_state(2), Circuit(n_qubits=3))

    def test_norm_preserved(self):
        """Annealing keeps the state normalized."""
        psi = run_annealing(AnnealingSchedule(t_final=3.0, dt=0.1), 6)

        self.assertAlmostEqual(float(np.linalg.norm(psi.amplitudes)), 1.0, places=12)

    def test_normalization_enforced(self):
        """Unnormalized amplitudes are rejected unless renormalized explicitly."""
        with self.assertRaises(ValidationError):
            Statevector(n_qubits=1, amplitudes=[1.0, 1.0])
        with self.assertLogs("surquest.utils.hybrid_mera.models.circuits.statevector", "WARNING"):
            psi = Statevector.from_unnormalized(np.array([1.0, 1.0]))
        assert np.allclose(psi.amplitudes, [2**-0.5, 2**-0.5])


class TestEnergy(unittest.TestCase):

    def test_aligned_spins(self):
        """<00| -Z0 Z1 |00> = -1."""
        self.assertAlmostEqual(energy(basis_state(2, 0), PauliSum.parse("-1.0 * ZZ")), -1.0)

    def test_minus_state(self):
        """|--> with X0 + X1 gives -2."""
        self.assertAlmostEqual(energy(minus_state(2), PauliSum.parse("XI + IX")), -2.0)

    def test_size_mismatch(self):
        """A state must match the Hamiltonian size."""
        with self.assertRaises(InvalidSizeError):
            energy(minus_state(3), build_tfim(4, -1.0, 1.0))

    def test_annealing_lowers_energy(self):
        """Slow annealing ends well below the energy of the initial product state."""
        h = build_tfim(6, -1.0, 1.0)
        psi = run_annealing(AnnealingSchedule(t_final=5.0, dt=0.1), 6)

        assert energy(psi, h) < energy(minus_state(6), h) - 0.1


if __name__ == "__main__":
    unittest.main()
