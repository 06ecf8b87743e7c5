import math
import unittest

import numpy as np

from surquest.utils.hybrid_mera.annealing import (
    build_annealing_circuit,
    energy,
    run_annealing,
)
from surquest.utils.hybrid_mera.errors import NoiseModelError, NoiseScalingError
from surquest.utils.hybrid_mera.models.circuits import (
    AnnealingSchedule,
    Circuit,
    NoiseModel,
    RXGate,
    RZZGate,
    Statevector,
)
from surquest.utils.hybrid_mera.noise import (
    random_pauli,
    run_noisy_trajectories,
    run_noisy_trajectory,
    scale_noise,
    trajectory_generators,
)
from surquest.utils.hybrid_mera.oracle import dense_ground_state, relative_error
from surquest.utils.hybrid_mera.pauli import PAULI_MATRICES, build_tfim

SCHEDULE = AnnealingSchedule(t_final=2.0, dt=0.2)


class TestScaleNoise(unittest.TestCase):

    def test_unit_strength(self):
        """eta = 1 reproduces the model."""
        base = NoiseModel.default()
        scaled = scale_noise(base, 1.0)

        assert scaled.e_ro == base.e_ro and scaled.p1 == base.p1 and scaled.p2 == base.p2
        self.assertAlmostEqual(scaled.t1 / base.t1, 1.0, places=9)
        self.assertAlmostEqual(scaled.t2 / base.t2, 1.0, places=9)

    def test_zero_strength(self):
        """eta = 0 switches every channel off."""
        scaled = scale_noise(NoiseModel.default(), 0.0)

        assert scaled.is_noise_free
        assert math.isinf(scaled.t1) and math.isinf(scaled.t2)

    def test_short_gates(self):
        """For t_g much shorter than T the times scale as t / eta."""
        scaled = scale_noise(NoiseModel.default(), 0.1)

        assert abs(scaled.t1 / 1800.0 - 1.0) < 1e-3
        assert abs(scaled.t2 / 1200.0 - 1.0) < 1e-3
        self.assertAlmostEqual(scaled.p2, 4e-4, places=15)

    def test_relaxation_probability_scales(self):
        """The per-gate relaxation probability is multiplied by eta."""
        base = NoiseModel(t1=2.0, t2=3.0, t_g=0.5)
        scaled = scale_noise(base, 1.5)

        self.assertAlmostEqual(scaled.damping_probability, 1.5 * base.damping_probability, places=12)

    def test_probability_overflow(self):
        """Scaled probabilities may not exceed one."""
        with self.assertRaises(NoiseScalingError):
            scale_noise(NoiseModel(e_ro=0.5), 3.0)

    def test_negative_strength(self):
        """eta must be non-negative."""
        with self.assertRaises(NoiseScalingError):
            scale_noise(NoiseModel.default(), -0.1)

    def test_t2_clamped(self):
        """A scaled T2 above 2 T1 is clamped with a warning."""
        with self.assertLogs("surquest.utils.hybrid_mera.noise", level="WARNING"):
            scaled = scale_noise(NoiseModel(t1=1.0, t2=2.0, t_g=0.5), 1.5)

        assert scaled.t2 == 2.0 * scaled.t1


class TestTrajectories(unittest.TestCase):

    def test_noise_free_matches_ideal(self):
        """Without noise a trajectory is the ideal circuit output."""
        circuit = build_annealing_circuit(SCHEDULE, 4)

        state = run_noisy_trajectory(circuit, NoiseModel.noiseless(), np.random.default_rng(0))

        assert state.fidelity(run_annealing(SCHEDULE, 4)) > 1 - 1e-12

    def test_certain_gate_error(self):
        """p2 = 1 inserts a non-identity two-qubit Pauli after the gate."""
        circuit = Circuit(n_qubits=2, layers=((RZZGate(qubits=(0, 1), theta=0.4),),))
        ideal = run_noisy_trajectory(circuit, NoiseModel.noiseless(), np.random.default_rng(0))
        candidates = []
        for a in "IXYZ":
            for b in "IXYZ":
                if a + b != "II":
                    pauli = np.kron(PAULI_MATRICES[a], PAULI_MATRICES[b])
                    candidates.append(pauli @ ideal.amplitudes)

        for seed in range(20):
            state = run_noisy_trajectory(circuit, NoiseModel(p2=1.0), np.random.default_rng(seed))
            overlaps = [abs(np.vdot(c, state.amplitudes)) for c in candidates]
            assert max(overlaps) > 1 - 1e-12

    def test_random_pauli_never_identity(self):
        """Drawn Pauli strings always act non-trivially."""
        rng = np.random.default_rng(4)
        draws = {random_pauli(2, rng) for _ in range(500)}

        assert "II" not in draws
        assert len(draws) == 15

    def test_full_damping(self):
        """Certain amplitude damping sends |1> to |0>."""
        circuit = Circuit(n_qubits=1, layers=((RXGate(qubits=(0,), phi=0.0),),))
        model = NoiseModel(t1=1e-3, t2=1e-3, t_g=1.0)
        excited = Statevector(n_qubits=1, amplitudes=[0.0, 1.0])

        state = run_noisy_trajectory(circuit, model, np.random.default_rng(1), initial=excited)

        assert abs(state.amplitudes[0]) > 1 - 1e-12

    def test_invalid_times(self):
        """T2 above 2 T1 is rejected before simulation."""
        model = NoiseModel.model_construct(t1=1.0, t2=5.0)
        with self.assertRaises(NoiseModelError):
            run_noisy_trajectory(Circuit(n_qubits=1), model, np.random.default_rng(0))

    def test_deterministic(self):
        """Equal seeds produce equal trajectories."""
        circuit = build_annealing_circuit(SCHEDULE, 4)
        model = scale_noise(NoiseModel.default(), 5.0)

        first = run_noisy_trajectories(circuit, model, 5, seed=11)
        second = run_noisy_trajectories(circuit, model, 5, seed=11)

        for a, b in zip(first, second):
            assert np.array_equal(a.amplitudes, b.amplitudes)

    def test_generators_independent(self):
        """Spawned generators produce different streams."""
        first, second = trajectory_generators(3, 2)

        assert first.random() != second.random()

    def test_noise_raises_energy(self):
        """Strong noise lifts the average energy above the ideal state."""
        h = build_tfim(4, -1.0, 1.0)
        circuit = build_annealing_circuit(SCHEDULE, 4)
        model = scale_noise(NoiseModel.default(), 10.0)

        states = run_noisy_trajectories(circuit, model, 100, seed=2)
        mean = np.mean([energy(state, h) for state in states])

        assert mean > energy(run_annealing(SCHEDULE, 4), h)

    def test_error_grows_with_strength(self):
        """On six sites the energy error rises strictly from eta 0.1 to 1 to 10."""
        h = build_tfim(6, -1.0, 1.0)
        e0 = dense_ground_state(h).e0
        circuit = build_annealing_circuit(SCHEDULE, 6)

        errors = []
        for eta in (0.1, 1.0, 10.0):
            states = run_noisy_trajectories(circuit, scale_noise(NoiseModel.default(), eta), 100, seed=4)
            errors.append(relative_error(np.mean([energy(state, h) for state in states]), e0))

        assert errors[0] < errors[1] < errors[2]


if __name__ == "__main__":
    unittest.main()
