"""Long-running end-to-end checks; run with ``pytest -m slow``."""

import tempfile
import unittest
from pathlib import Path

import numpy as np
import pytest

from surquest.utils.hybrid_mera.annealing import build_annealing_circuit, energy, run_annealing
from surquest.utils.hybrid_mera.experiments import cmd_optimize, snap_schedule
from surquest.utils.hybrid_mera.mera import (
    energy_exact,
    gradient,
    identity_mera,
    random_mera,
    transform_operator,
)
from surquest.utils.hybrid_mera.models.circuits import AnnealingSchedule, NoiseModel, Statevector
from surquest.utils.hybrid_mera.models.experiments import ExperimentConfig
from surquest.utils.hybrid_mera.models.mera import Mera, MeraTensor
from surquest.utils.hybrid_mera.noise import scale_noise
from surquest.utils.hybrid_mera.optimization import config_hamiltonian, config_qa_state, optimize
from surquest.utils.hybrid_mera.oracle import dense_ground_state, relative_error
from surquest.utils.hybrid_mera.pauli import build_tfim, to_dense
from surquest.utils.hybrid_mera.shadows import (
    NoisySnapshotSource,
    estimate,
    sample_snapshots,
    weight_resolved_variance,
)

SEEDS = {"circuit": 11, "shadows": 12, "optimizer": 13}


def make_config(n, steps, layers=1, interface=None, **sections):
    data = {
        "system": {"n": n},
        "schedule": {"t_final": 10.0, "dt": 0.1},
        "mera": {"layers": layers},
        "optimizer": {"steps": steps, "alpha": 0.01},
        "interface": interface or {"kind": "exact"},
        "seeds": dict(SEEDS),
    }
    data.update(sections)
    return ExperimentConfig.model_validate(data)


def random_state(n, seed):
    rng = np.random.default_rng(seed)
    return Statevector.from_unnormalized(rng.normal(size=2**n) + 1j * rng.normal(size=2**n))


@pytest.mark.slow
class TestAnnealingRegimes(unittest.TestCase):

    def energies(self, t_final, dts):
        h = build_tfim(8, -1.0, 1.0)
        return [energy(run_annealing(snap_schedule(t_final, dt, -1.0, 1.0), 8), h) for dt in dts]

    def test_trotter_consistency(self):
        """Halving the step shrinks |E(dt) - E(dt/2)| at every level from 0.8 to 0.1."""
        values = self.energies(10.0, [0.8, 0.4, 0.2, 0.1, 0.05])
        gaps = [abs(a - b) for a, b in zip(values, values[1:])]

        assert all(a > b for a, b in zip(gaps, gaps[1:]))

    def test_trotter_and_adiabatic_errors(self):
        """Smaller steps and longer ramps both reduce the annealing error."""
        e0 = dense_ground_state(build_tfim(8, -1.0, 1.0)).e0
        fine, coarse = self.energies(10.0, [0.1, 0.8])
        (fast_ramp,) = self.energies(2.0, [0.05])
        (slow_ramp,) = self.energies(10.0, [0.05])

        assert relative_error(fine, e0) < relative_error(coarse, e0)
        assert relative_error(slow_ramp, e0) < relative_error(fast_ramp, e0)


@pytest.mark.slow
class TestHybridImprovement(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.config = make_config(12, 1000)
        cls.h = config_hamiltonian(cls.config)
        cls.psi = config_qa_state(cls.config)
        cls.e0 = dense_ground_state(cls.h).e0
        cls.trace = optimize(cls.config, psi=cls.psi)

    def test_identity_start(self):
        """The first record is the annealing energy."""
        self.assertAlmostEqual(self.trace.initial_energy, energy(self.psi, self.h), places=12)
        self.assertAlmostEqual(
            energy_exact(identity_mera(12, 1), self.psi, self.h), energy(self.psi, self.h), places=12
        )

    def test_error_halved(self):
        """One layer at least halves the annealing error."""
        initial = relative_error(self.trace.initial_energy, self.e0)
        final = relative_error(self.trace.final_energy, self.e0)

        assert final <= 0.5 * initial

    def test_second_layer_helps(self):
        """Two layers end no worse than one."""
        deeper = optimize(make_config(12, 1000, layers=2), psi=self.psi)

        assert relative_error(deeper.final_energy, self.e0) <= relative_error(self.trace.final_energy, self.e0)

    def test_final_network_on_manifold(self):
        """The optimized tensors remain unitary."""
        assert max(t.isometry_residual() for t in self.trace.final_mera.tensors) <= 1e-10


@pytest.mark.slow
class TestStatisticalContracts(unittest.TestCase):

    def test_spectrum_preserved(self):
        """Twenty random networks keep the TFIM spectrum."""
        h = build_tfim(6, -1.0, 1.0)
        before = np.linalg.eigvalsh(to_dense(h).matrix)
        for seed in range(20):
            transformed = transform_operator(random_mera(6, 1, seed), h).to_pauli_sum()
            after = np.linalg.eigvalsh(to_dense(transformed).matrix)
            assert np.allclose(before, after, atol=1e-8)

    def test_gradient_contract(self):
        """Central differences match the gradient on twenty instances."""
        h = build_tfim(6, -1.0, 1.0)
        step = 1e-5
        rng = np.random.default_rng(100)
        for seed in range(20):
            mera = random_mera(6, 1, seed)
            psi = random_state(6, 1000 + seed)
            directions = [rng.normal(size=x.shape) + 1j * rng.normal(size=x.shape) for x in mera.matrices]

            def shifted(sign):
                tensors = tuple(
                    MeraTensor.model_construct(kind=t.kind, layer=t.layer, block=t.block, matrix=t.matrix + sign * step * d)
                    for t, d in zip(mera.tensors, directions)
                )
                return energy_exact(Mera.model_construct(n_sites=6, n_layers=1, tensors=tensors), psi, h)

            numeric = (shifted(1.0) - shifted(-1.0)) / (2 * step)
            analytic = sum(2.0 * np.vdot(g, d).real for g, d in zip(gradient(mera, psi, h).matrices, directions))
            assert abs(analytic - numeric) <= 1e-5 * max(1.0, abs(numeric))

    def test_shadow_unbiased(self):
        """Fifty independent estimates average to the exact energy."""
        h = build_tfim(4, -1.0, 1.0)
        psi = random_state(4, 7)
        exact = energy(psi, h)
        rng = np.random.default_rng(8)

        results = [estimate(sample_snapshots(psi, 20000, rng), h) for _ in range(50)]
        mean = np.mean([r.mean for r in results])
        pooled = np.sqrt(np.sum([r.std_err**2 for r in results])) / len(results)

        assert abs(mean - exact) <= 3 * pooled

    def test_variance_scaling(self):
        """Squared errors scale as 1 / S on eight sites."""
        h = build_tfim(8, -1.0, 1.0)
        psi = run_annealing(AnnealingSchedule(t_final=10.0, dt=0.1), 8)
        for seed in range(10):
            small = estimate(sample_snapshots(psi, 5000, 2 * seed), h).std_err ** 2
            large = estimate(sample_snapshots(psi, 20000, 2 * seed + 1), h).std_err ** 2
            assert 2.8 <= small / large <= 5.7

    def test_variance_identity(self):
        """Weight contributions reproduce the estimator variance on every set."""
        h = build_tfim(8, -1.0, 1.0)
        psi = run_annealing(AnnealingSchedule(t_final=10.0, dt=0.1), 8)
        for seed in range(5):
            shadows = sample_snapshots(psi, 3000, seed)
            breakdown = weight_resolved_variance(shadows, h)
            assert abs(breakdown.total / estimate(shadows, h).std_err ** 2 - 1.0) <= 1e-10


@pytest.mark.slow
class TestVarianceOrdering(unittest.TestCase):

    def test_optimized_below_random(self):
        """An optimized network has lower variance than random ones on average."""
        config = make_config(8, 500)
        h = config_hamiltonian(config)
        psi = config_qa_state(config)
        shadows = sample_snapshots(psi, 10000, 21)
        optimized = optimize(config, psi=psi).final_mera

        def total(mera):
            return weight_resolved_variance(shadows, transform_operator(mera, h).to_pauli_sum()).total

        random_mean = np.mean([total(random_mera(8, 1, seed)) for seed in range(10)])

        assert random_mean >= total(optimized)


@pytest.mark.slow
class TestProtocolBias(unittest.TestCase):

    def run_protocol(self, protocol):
        config = make_config(6, 200, interface={"kind": "shadow", "s": 500, "protocol": protocol})
        return optimize(config, psi=config_qa_state(config))

    def test_fixed_pool_overfits(self):
        """A single reused pool is driven below the exact ground energy."""
        e0 = dense_ground_state(build_tfim(6, -1.0, 1.0)).e0
        trace = self.run_protocol("i")

        assert any(r.energy < e0 - 2 * r.std_err for r in trace.records)

    def test_independent_pools_unbiased(self):
        """Fresh independent pools stay statistically above the ground energy."""
        e0 = dense_ground_state(build_tfim(6, -1.0, 1.0)).e0
        trace = self.run_protocol("iv")

        assert all(r.energy >= e0 - 3 * r.std_err for r in trace.records)


@pytest.mark.slow
class TestNoiseRobustness(unittest.TestCase):

    def test_improves_on_noisy_annealing(self):
        """Optimization on noisy snapshots beats the noisy annealing energy."""
        config = make_config(6, 300, interface={"kind": "shadow", "s": 5000, "protocol": "iv"})
        h = config_hamiltonian(config)
        psi = config_qa_state(config)
        e0 = dense_ground_state(h).e0
        circuit = build_annealing_circuit(AnnealingSchedule(t_final=10.0, dt=0.1), 6)

        errors = []
        for eta in (0.1, 1.0):
            source = NoisySnapshotSource(
                circuit, scale_noise(NoiseModel.default(), eta), 64, seed=SEEDS["circuit"], eta=eta
            )
            noisy_qa = source.mixed_energy(h)
            trace = optimize(config, psi=psi, source=source, reference=psi)
            assert trace.records[-1].exact_energy < noisy_qa
            errors.append(relative_error(noisy_qa, e0))

        assert errors[0] < errors[1]


@pytest.mark.slow
class TestDeterminism(unittest.TestCase):

    def test_identical_traces(self):
        """Equal seeds write byte-identical traces."""
        config = make_config(12, 100)
        with tempfile.TemporaryDirectory() as tmp:
            first, second = Path(tmp) / "a", Path(tmp) / "b"
            cmd_optimize(config, first)
            cmd_optimize(config, second)

            assert (first / "trace.csv").read_bytes() == (second / "trace.csv").read_bytes()
            assert (first / "mera.json").read_bytes() == (second / "mera.json").read_bytes()


if __name__ == "__main__":
    unittest.main()
