import unittest

import numpy as np

from surquest.utils.hybrid_mera.annealing import energy
from surquest.utils.hybrid_mera.errors import ConfigurationError
from surquest.utils.hybrid_mera.models.experiments import ExperimentConfig, ProtocolKind
from surquest.utils.hybrid_mera.optimization import (
    config_hamiltonian,
    config_qa_state,
    optimize,
)
from surquest.utils.hybrid_mera.oracle import dense_ground_state
from surquest.utils.hybrid_mera.shadows import IdealSnapshotSource, estimate


def make_config(steps=20, interface=None, **extra):
    data = {
        "system": {"n": 4},
        "schedule": {"t_final": 2.0, "dt": 0.2},
        "optimizer": {"steps": steps, "alpha": 0.01},
        "interface": interface or {"kind": "exact"},
        "seeds": {"circuit": 1, "shadows": 2, "optimizer": 3},
    }
    data.update(extra)
    return ExperimentConfig.model_validate(data)


class TestExactInterface(unittest.TestCase):

    def test_zero_steps(self):
        """Zero steps record only the annealing energy."""
        config = make_config(steps=0)

        trace = optimize(config)

        assert len(trace.records) == 1
        self.assertAlmostEqual(
            trace.final_energy, energy(config_qa_state(config), config_hamiltonian(config)), places=12
        )

    def test_improves_on_annealing(self):
        """A short run lowers the energy without crossing the ground energy."""
        config = make_config(steps=30)
        e0 = dense_ground_state(config_hamiltonian(config)).e0

        trace = optimize(config)

        assert len(trace.records) == 31
        assert trace.final_energy < trace.initial_energy
        assert all(value >= e0 - 1e-9 for value in trace.energies)
        best = trace.best_so_far()
        assert all(a >= b for a, b in zip(best, best[1:]))

    def test_early_stop_at_ground_state(self):
        """Starting at an eigenstate stops on the first gradient check."""
        config = make_config(steps=10, optimizer={"steps": 10, "early_stop": 1e-6})
        psi = dense_ground_state(config_hamiltonian(config)).vector

        trace = optimize(config, psi=psi)

        assert trace.early_stopped
        assert len(trace.records) == 1

    def test_reference_energies(self):
        """A reference state adds exact energies to every record."""
        config = make_config(steps=3)

        trace = optimize(config, reference=config_qa_state(config))

        for record in trace.records:
            self.assertAlmostEqual(record.exact_energy, record.energy, places=12)

    def test_source_requires_shadows(self):
        """A snapshot source makes no sense with the exact interface."""
        config = make_config(steps=1)
        with self.assertRaises(ConfigurationError):
            optimize(config, source=IdealSnapshotSource(config_qa_state(config)))


class TestShadowInterface(unittest.TestCase):

    def test_all_protocols_run(self):
        """Each protocol records steps 0..steps with a standard error."""
        for protocol in ProtocolKind:
            config = make_config(
                steps=3, interface={"kind": "shadow", "s": 200, "protocol": protocol.value}
            )

            trace = optimize(config, reference=config_qa_state(config))

            assert [r.step for r in trace.records] == [0, 1, 2, 3]
            assert all(r.std_err > 0 for r in trace.records)
            assert all(r.exact_energy is not None for r in trace.records)
            assert trace.protocol == protocol.value

    def test_deterministic(self):
        """Equal seeds give identical traces."""
        config = make_config(steps=3, interface={"kind": "shadow", "s": 150, "protocol": "iv"})

        first = optimize(config).energies
        second = optimize(config).energies

        assert first == second

    def test_seed_changes_trace(self):
        """A different shadow seed changes the recorded energies."""
        config = make_config(steps=2, interface={"kind": "shadow", "s": 150, "protocol": "iv"})

        first = optimize(config).energies
        second = optimize(config.with_seed_override(99)).energies

        assert not np.allclose(first, second)

    def test_fixed_pool_scores_first_draw(self):
        """Protocol i scores the initial network on the first pool drawn from the shadow seed."""
        config = make_config(steps=1, interface={"kind": "shadow", "s": 100, "protocol": "i"})
        psi = config_qa_state(config)
        pool = IdealSnapshotSource(psi).sample(100, np.random.default_rng(config.seeds.shadows))

        trace = optimize(config)

        self.assertAlmostEqual(
            trace.records[0].energy, estimate(pool, config_hamiltonian(config)).mean, places=10
        )

    def test_twelve_site_chain(self):
        """The shadow interface runs on the largest desk-size chain."""
        config = make_config(
            steps=2,
            interface={"kind": "shadow", "s": 100, "protocol": "i"},
            system={"n": 12},
            mera={"layers": 1},
        )

        trace = optimize(config)

        assert [r.step for r in trace.records] == [0, 1, 2]
        assert max(t.isometry_residual() for t in trace.final_mera.tensors) <= 1e-10


if __name__ == "__main__":
    unittest.main()
