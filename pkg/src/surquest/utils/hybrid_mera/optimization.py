"""
Optimization loop for the hybrid annealing + MERA energy.
"""

from __future__ import annotations

import logging
import time
from typing import List, Optional

import numpy as np

from .annealing import run_annealing
from .errors import ConfigurationError, HybridMeraError
from .mera import energy_exact, energy_shadow, gradient, identity_mera, random_mera
from .models.circuits import AnnealingSchedule, Statevector
from .models.experiments import ExperimentConfig, ProtocolKind
from .models.mera import Mera
from .models.optimization import OptimizationTrace, TraceRecord
from .models.pauli import PauliSum
from .pauli import build_tfim
from .riemannian import adam_step, init_adam, riemannian_gradient
from .shadows import IdealSnapshotSource, RegionDensities, SnapshotSource

logger = logging.getLogger(__name__)


def config_hamiltonian(config: ExperimentConfig) -> PauliSum:
    system = config.system
    return build_tfim(system.n, system.j, system.lam, system.boundary)


def config_schedule(config: ExperimentConfig) -> AnnealingSchedule:
    return AnnealingSchedule(
        t_final=config.schedule.t_final,
        dt=config.schedule.dt,
        j_final=config.system.j,
        lam=config.system.lam,
    )


def config_qa_state(config: ExperimentConfig) -> Statevector:
    """Noiseless annealing state of the configured schedule."""
    return run_annealing(config_schedule(config), config.system.n, config.system.boundary)


def initial_mera(config: ExperimentConfig) -> Mera:
    if config.mera.init == "random":
        return random_mera(config.system.n, config.mera.layers, config.seeds.optimizer)
    return identity_mera(config.system.n, config.mera.layers)


class _ShadowSchedule:
    """Hands out gradient and evaluation pools according to a protocol."""

    def __init__(self, protocol: ProtocolKind, source: SnapshotSource, s: int, s_eval: int, seed: int):
        self.protocol = protocol
        self.source = source
        self.s = s
        self.s_eval = s_eval
        self.rng = np.random.default_rng(seed)
        self.training = None
        self.training_regions = None
        self.evaluation = None
        if protocol in (ProtocolKind.FIXED_SHARED, ProtocolKind.FIXED_SPLIT):
            self.training = source.sample(s, self.rng)
            self.training_regions = RegionDensities(self.training)
            self.evaluation = self.training
            if protocol == ProtocolKind.FIXED_SPLIT:
                self.evaluation = source.sample(s_eval, self.rng)
        elif protocol == ProtocolKind.RESAMPLE_SHARED:
            self.training = source.sample(s, self.rng)

    def evaluation_pool(self):
        """Pool for the energy recorded at the current parameters."""
        if self.protocol == ProtocolKind.RESAMPLE_INDEPENDENT:
            return self.source.sample(self.s_eval, self.rng)
        return self.evaluation if self.evaluation is not None else self.training

    def gradient_source(self):
        """Pool the next gradient is taken on; fixed pools keep their reduced densities."""
        if self.training_regions is not None:
            return self.training_regions
        if self.protocol == ProtocolKind.RESAMPLE_INDEPENDENT:
            return self.source.sample(self.s, self.rng)
        # shared resampling: the pool drawn for this step also scores the update
        return self.training

    def advance(self) -> None:
        if self.protocol == ProtocolKind.RESAMPLE_SHARED:
            self.training = self.source.sample(self.s, self.rng)


def optimize(
    config: ExperimentConfig,
    *,
    psi: Optional[Statevector] = None,
    source: Optional[SnapshotSource] = None,
    reference: Optional[Statevector] = None,
) -> OptimizationTrace:
    """Minimize the hybrid energy with Riemannian ADAM.

    Args:
        config: Experiment configuration (system, schedule, MERA, optimizer, interface, seeds).
        psi: Pre-built annealing state; built from the configured schedule when omitted.
        source: Snapshot source for the shadow interface; defaults to ideal snapshots of ``psi``.
        reference: When given, every record also carries the exact energy of the
            current MERA on this state.

    Returns:
        Records for steps ``0..steps`` (fewer when stopped early) and the final MERA.
    """
    h = config_hamiltonian(config)
    if psi is None and (config.interface.kind == "exact" or source is None):
        psi = config_qa_state(config)
    mera = initial_mera(config)
    opt = config.optimizer
    state = init_adam(mera, opt.alpha, opt.beta1, opt.beta2, opt.eps)

    shadows = None
    if config.interface.kind == "shadow":
        shadows = _ShadowSchedule(
            protocol=config.interface.protocol,
            source=source if source is not None else IdealSnapshotSource(psi),
            s=config.interface.s,
            s_eval=config.interface.evaluation_s or config.interface.s,
            seed=config.seeds.shadows,
        )
    elif source is not None:
        raise ConfigurationError("a snapshot source needs the shadow interface")

    logger.info(
        f"Optimizing {config.mera.layers}-layer MERA on {config.system.n} sites: "
        f"{opt.steps} steps, interface={config.interface.kind}"
        + (f", protocol={config.interface.protocol.value}" if shadows else "")
    )
    start = time.perf_counter()
    records: List[TraceRecord] = []
    early_stopped = False

    def record(step: int, energy: float, std_err: float = 0.0) -> None:
        exact = energy_exact(mera, reference, h) if reference is not None else None
        records.append(
            TraceRecord(
                step=step,
                energy=energy,
                std_err=std_err,
                exact_energy=exact,
                wall_time=time.perf_counter() - start,
            )
        )
        logger.debug(f"step {step}: energy={energy!r} std_err={std_err!r}")

    try:
        if shadows is None:
            for step in range(opt.steps + 1):
                grads = gradient(mera, psi, h)
                record(step, grads.energy)
                if step == opt.steps or _converged(mera, grads, opt.early_stop):
                    early_stopped = step < opt.steps
                    break
                mera, state = adam_step(mera, grads, state)
        else:
            result = energy_shadow(mera, shadows.evaluation_pool(), h)
            record(0, result.mean, result.std_err)
            for step in range(1, opt.steps + 1):
                grads = gradient(mera, shadows.gradient_source(), h)
                if _converged(mera, grads, opt.early_stop):
                    early_stopped = True
                    break
                mera, state = adam_step(mera, grads, state)
                result = energy_shadow(mera, shadows.evaluation_pool(), h)
                record(step, result.mean, result.std_err)
                shadows.advance()
    except HybridMeraError as error:
        logger.error(f"Optimization failed after {len(records)} records: {error}")
        raise

    if early_stopped:
        logger.info(f"Stopped early after {records[-1].step} steps (gradient below threshold)")
    logger.info(
        f"Optimization finished: energy {records[0].energy!r} -> {records[-1].energy!r} "
        f"in {time.perf_counter() - start:.1f}s"
    )
    return OptimizationTrace(
        records=records,
        final_mera=mera,
        config=config.model_dump(mode="json"),
        protocol=config.interface.protocol.value if shadows else None,
        early_stopped=early_stopped,
    )


def _converged(mera: Mera, grads, threshold: Optional[float]) -> bool:
    if threshold is None:
        return False
    norm = float(np.sqrt(sum(np.sum(np.abs(g) ** 2) for g in riemannian_gradient(mera, grads))))
    return norm < threshold
