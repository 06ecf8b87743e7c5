"""
Experiment commands: annealing sweeps, MERA optimization, snapshot-protocol
studies, noisy optimization, variance analysis and snapshot sampling.

Every command takes a validated ``ExperimentConfig`` and an output directory and
returns the paths it wrote.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional

import numpy as np

from .annealing import apply_circuit, build_annealing_circuit, energy, minus_state
from .errors import ConfigurationError
from .mera import energy_exact, identity_mera, random_mera, transform_operator
from .models.circuits import AnnealingSchedule
from .models.documents import AnalysisReport, CircuitDocument, RunSummary, WorstCaseEntry
from .models.experiments import ExperimentConfig, ProtocolKind
from .models.mera import Mera
from .models.pauli import PauliSum
from .noise import scale_noise
from .optimization import (
    config_hamiltonian,
    config_qa_state,
    config_schedule,
    optimize,
)
from .oracle import dense_ground_state, relative_error, tfim_free_fermion_energy, two_qubit_depth
from .pauli import DENSE_QUBIT_CAP
from .persistence import (
    provenance_lines,
    read_mera,
    read_snapshots,
    write_csv,
    write_json,
    write_mera,
    write_snapshots,
    write_trace_csv,
)
from .shadows import (
    DEFAULT_POOL_SIZE,
    NoisySnapshotSource,
    required_snapshots,
    sample_snapshots,
    weight_resolved_variance,
    worst_case_bound,
    worst_case_locality,
    worst_case_prefactor,
)

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = [
    "t_final",
    "dt",
    "dt_effective",
    "n_steps",
    "energy",
    "relative_error",
    "two_qubit_depth",
    "depth_marker",
]


def _seeds(config: ExperimentConfig) -> Dict[str, int]:
    return config.seeds.model_dump()


def _provenance(config: ExperimentConfig) -> List[str]:
    return provenance_lines(config.config_hash(), _seeds(config))


def reference_energy(config: ExperimentConfig, h: PauliSum) -> Optional[float]:
    """Exact ground energy when an oracle covers the configured system."""
    if h.n_qubits <= DENSE_QUBIT_CAP:
        return dense_ground_state(h).e0
    if config.system.boundary == "open":
        return tfim_free_fermion_energy(config.system.n, config.system.j, config.system.lam)
    logger.warning(f"No exact reference for a periodic chain of {h.n_qubits} sites")
    return None


def _relative(e: float, e0: Optional[float]) -> Optional[float]:
    return relative_error(e, e0) if e0 is not None else None


class SweepCell(NamedTuple):
    t_final: float
    dt: float
    dt_effective: float
    n_steps: int
    energy: float
    relative_error: Optional[float]
    depth: int


def snap_schedule(t_final: float, dt: float, j_final: float, lam: float) -> AnnealingSchedule:
    """Schedule with the integral step count nearest to ``t_final / dt``."""
    steps = max(1, int(round(t_final / dt)))
    effective = t_final / steps
    if abs(effective - dt) > 1e-9 * dt:
        logger.warning(
            f"t_final={t_final!r} is not a multiple of dt={dt!r}; "
            f"using {steps} steps of dt={effective!r}"
        )
    return AnnealingSchedule(t_final=t_final, dt=effective, j_final=j_final, lam=lam)


def _sweep_cell(config: ExperimentConfig, h: PauliSum, e0: Optional[float], t_final: float, dt: float) -> SweepCell:
    system = config.system
    schedule = snap_schedule(t_final, dt, system.j, system.lam)
    circuit = build_annealing_circuit(schedule, system.n, system.boundary)
    e = energy(apply_circuit(minus_state(system.n), circuit), h)
    return SweepCell(
        t_final=t_final,
        dt=dt,
        dt_effective=schedule.dt,
        n_steps=schedule.n_steps,
        energy=e,
        relative_error=_relative(e, e0),
        depth=two_qubit_depth(circuit),
    )


def depth_markers(cells: List[SweepCell], target: int) -> List[bool]:
    """Per ``t_final``, flag the cell whose depth is nearest ``target`` (ties: smaller dt)."""
    chosen = {}
    for index, cell in enumerate(cells):
        key = (abs(cell.depth - target), cell.dt)
        if cell.t_final not in chosen or key < chosen[cell.t_final][0]:
            chosen[cell.t_final] = (key, index)
    marked = {index for _, index in chosen.values()}
    return [index in marked for index in range(len(cells))]


def cmd_anneal(config: ExperimentConfig, out: Path) -> List[Path]:
    """Sweep the (t_final, dt) grid and dump the configured annealing circuit."""
    out = Path(out)
    h = config_hamiltonian(config)
    e0 = reference_energy(config, h)
    grid = [(t, dt) for t in config.sweep.t_finals for dt in config.sweep.dts]
    logger.info(f"Annealing sweep over {len(grid)} cells on {config.system.n} sites")

    def run(cell):
        return _sweep_cell(config, h, e0, *cell)

    if config.sweep.workers > 1:
        with ThreadPoolExecutor(max_workers=config.sweep.workers) as executor:
            cells = list(executor.map(run, grid))
    else:
        cells = [run(cell) for cell in grid]

    markers = depth_markers(cells, config.sweep.depth_target)
    rows = [
        (c.t_final, c.dt, c.dt_effective, c.n_steps, c.energy, c.relative_error, c.depth, marker)
        for c, marker in zip(cells, markers)
    ]
    comments = _provenance(config) + [f"e_exact={e0!r}", f"depth_target={config.sweep.depth_target}"]
    paths = [write_csv(out / "anneal_sweep.csv", SWEEP_COLUMNS, rows, comments)]

    schedule = config_schedule(config)
    circuit = build_annealing_circuit(schedule, config.system.n, config.system.boundary)
    document = CircuitDocument(
        config_hash=config.config_hash(),
        seeds=_seeds(config),
        t_final=schedule.t_final,
        dt=schedule.dt,
        circuit=circuit,
    )
    paths.append(write_json(out / "circuit.json", document))
    return paths


def _summary(
    command: str,
    config: ExperimentConfig,
    e_qa: float,
    e_final: float,
    e_exact: Optional[float],
    steps_run: int,
    wall_time: float,
    **extra,
) -> RunSummary:
    error_qa = _relative(e_qa, e_exact)
    error_final = _relative(e_final, e_exact)
    ratio = None
    if error_qa is not None and error_final:
        ratio = error_qa / error_final
    return RunSummary(
        command=command,
        config_hash=config.config_hash(),
        seeds=_seeds(config),
        e_qa=e_qa,
        e_final=e_final,
        e_exact=e_exact,
        relative_error_qa=error_qa,
        relative_error_final=error_final,
        improvement_ratio=ratio,
        steps_run=steps_run,
        wall_time=wall_time,
        extra=extra,
    )


def cmd_optimize(config: ExperimentConfig, out: Path) -> List[Path]:
    """Optimize the MERA on the noiseless annealing state."""
    out = Path(out)
    start = time.perf_counter()
    h = config_hamiltonian(config)
    psi = config_qa_state(config)
    e_qa = energy(psi, h)
    e_exact = reference_energy(config, h)

    shadow = config.interface.kind == "shadow"
    trace = optimize(config, psi=psi, reference=psi if shadow else None)
    e_final = energy_exact(trace.final_mera, psi, h)

    extra = {"interface": config.interface.kind}
    if shadow:
        extra.update(
            protocol=config.interface.protocol.value,
            final_estimate=trace.final_energy,
            final_std_err=trace.records[-1].std_err,
        )
    summary = _summary(
        "optimize", config, e_qa, e_final, e_exact,
        steps_run=trace.records[-1].step,
        wall_time=time.perf_counter() - start,
        **extra,
    )
    return [
        write_trace_csv(out / "trace.csv", trace, config.config_hash(), _seeds(config)),
        write_json(out / "summary.json", summary),
        write_mera(out / "mera.json", trace.final_mera, config.config_hash(), _seeds(config)),
    ]


def cmd_protocol_study(config: ExperimentConfig, out: Path) -> List[Path]:
    """Run the four snapshot protocols on identical seeds with exact re-evaluation."""
    if config.interface.kind != "shadow":
        raise ConfigurationError("the protocol study needs the shadow interface")
    out = Path(out)
    start = time.perf_counter()
    h = config_hamiltonian(config)
    psi = config_qa_state(config)
    e_qa = energy(psi, h)
    e_exact = reference_energy(config, h)

    paths, protocols = [], {}
    for protocol in ProtocolKind:
        interface = config.interface.model_copy(update={"protocol": protocol})
        variant = config.model_copy(update={"interface": interface})
        trace = optimize(variant, psi=psi, reference=psi)
        paths.append(
            write_trace_csv(
                out / f"protocol_{protocol.value}.csv", trace, config.config_hash(), _seeds(config)
            )
        )
        lowest = min(trace.records, key=lambda record: record.energy)
        protocols[protocol.value] = {
            "min_energy": lowest.energy,
            "min_energy_std_err": lowest.std_err,
            "min_energy_step": lowest.step,
            "final_estimate": trace.final_energy,
            "final_exact": trace.records[-1].exact_energy,
        }

    final_exact = protocols[ProtocolKind.RESAMPLE_INDEPENDENT.value]["final_exact"]
    summary = _summary(
        "protocol-study", config, e_qa, final_exact, e_exact,
        steps_run=config.optimizer.steps,
        wall_time=time.perf_counter() - start,
        protocols=protocols,
    )
    paths.append(write_json(out / "summary.json", summary))
    return paths


def cmd_noisy_optimize(config: ExperimentConfig, out: Path) -> List[Path]:
    """Optimize on noisy snapshots for every configured noise strength."""
    if not config.noise.enabled:
        raise ConfigurationError("noisy optimization needs noise.enabled = true")
    if config.interface.kind != "shadow":
        raise ConfigurationError("noisy optimization needs the shadow interface")
    out = Path(out)
    start = time.perf_counter()
    h = config_hamiltonian(config)
    psi = config_qa_state(config)
    e_qa = energy(psi, h)
    e_exact = reference_energy(config, h)
    circuit = build_annealing_circuit(config_schedule(config), config.system.n, config.system.boundary)

    paths, strengths = [], {}
    final_exact = e_qa
    for eta in config.noise.strengths:
        model = scale_noise(config.noise.model, eta)
        source = NoisySnapshotSource(
            circuit, model, config.noise.trajectories, seed=config.seeds.circuit, eta=eta
        )
        pool = source
        if source.pool is None:
            pool = NoisySnapshotSource(circuit, model, DEFAULT_POOL_SIZE, seed=config.seeds.circuit)
        noisy_qa = pool.mixed_energy(h)

        trace = optimize(config, psi=psi, source=source, reference=psi)
        final_exact = trace.records[-1].exact_energy
        paths.append(
            write_trace_csv(out / f"noisy_eta_{eta:g}.csv", trace, config.config_hash(), _seeds(config))
        )
        strengths[f"{eta:g}"] = {
            "noisy_qa_energy": noisy_qa,
            "noisy_qa_relative_error": _relative(noisy_qa, e_exact),
            "final_estimate": trace.final_energy,
            "final_exact": final_exact,
            "final_relative_error": _relative(final_exact, e_exact),
        }
        logger.info(f"eta={eta:g}: noisy QA energy {noisy_qa!r}, final exact energy {final_exact!r}")

    summary = _summary(
        "noisy-optimize", config, e_qa, final_exact, e_exact,
        steps_run=config.optimizer.steps,
        wall_time=time.perf_counter() - start,
        strengths=strengths,
    )
    paths.append(write_json(out / "summary.json", summary))
    return paths


def _transformed_variance(mera: Mera, shadows, h: PauliSum):
    return weight_resolved_variance(shadows, transform_operator(mera, h).to_pauli_sum())


def cmd_analyze(
    config: ExperimentConfig,
    out: Path,
    shadows_path: Optional[Path] = None,
    mera_path: Optional[Path] = None,
) -> List[Path]:
    """Weight-resolved variance of a MERA-transformed TFIM plus snapshot forecasts."""
    out = Path(out)
    h = config_hamiltonian(config)
    analysis = config.analysis
    if shadows_path is not None:
        shadows = read_snapshots(shadows_path)
    else:
        shadows = sample_snapshots(config_qa_state(config), analysis.s, config.seeds.shadows)
    if shadows.n_qubits != config.system.n:
        raise ConfigurationError(
            f"snapshot set of {shadows.n_qubits} qubits for a {config.system.n}-site system"
        )
    mera = read_mera(mera_path) if mera_path is not None else identity_mera(config.system.n, config.mera.layers)

    breakdown = _transformed_variance(mera, shadows, h)
    rows = [("mera", w, value) for w, value in breakdown.contributions.items()]

    random_total = None
    if analysis.random_instances:
        sequence = np.random.SeedSequence(config.seeds.optimizer)
        totals, pooled = [], {}
        for child in sequence.spawn(analysis.random_instances):
            instance = random_mera(config.system.n, mera.n_layers, np.random.default_rng(child))
            result = _transformed_variance(instance, shadows, h)
            totals.append(result.total)
            for w, value in result.contributions.items():
                pooled[w] = pooled.get(w, 0.0) + value / analysis.random_instances
        random_total = float(np.mean(totals))
        rows += [("random_mean", w, pooled[w]) for w in sorted(pooled)]

    forecast_measured = None
    e_exact = reference_energy(config, h)
    if e_exact is not None and breakdown.total > 0:
        gap = abs(energy(config_qa_state(config), h) - e_exact)
        if gap > 0:
            forecast_measured = required_snapshots(
                breakdown.total, shadows.size, gap, analysis.f
            )

    m_obs = analysis.m_obs or len(h)
    worst_case = [
        WorstCaseEntry(
            layers=layers,
            locality=worst_case_locality(layers),
            prefactor=worst_case_prefactor(layers=layers),
            bound=worst_case_bound(m_obs, analysis.eps, layers=layers, max_norm=analysis.max_norm),
        )
        for layers in analysis.layers
    ]
    report = AnalysisReport(
        config_hash=config.config_hash(),
        seeds=_seeds(config),
        s=shadows.size,
        contributions=breakdown.contributions,
        total_variance=breakdown.total,
        random_total_variance=random_total,
        random_instances=analysis.random_instances,
        forecast_anchor=required_snapshots(analysis.var_ref, analysis.s_ref, analysis.delta_e, analysis.f),
        forecast_measured=forecast_measured,
        worst_case=worst_case,
    )
    return [
        write_csv(out / "weight_variance.csv", ["mera", "weight", "contribution"], rows, _provenance(config)),
        write_json(out / "analysis.json", report),
    ]


def cmd_shadows_sample(config: ExperimentConfig, out: Path) -> List[Path]:
    """Sample ``interface.s`` snapshots of the configured annealing state."""
    out = Path(out)
    s = config.interface.s
    if config.noise.enabled:
        circuit = build_annealing_circuit(config_schedule(config), config.system.n, config.system.boundary)
        eta = config.noise.eta
        source = NoisySnapshotSource(
            circuit,
            scale_noise(config.noise.model, eta),
            config.noise.trajectories,
            seed=config.seeds.circuit,
            eta=eta,
        )
        shadows = source.sample(s, config.seeds.shadows)
    else:
        shadows = sample_snapshots(config_qa_state(config), s, config.seeds.shadows)
    return [write_snapshots(out / "snapshots.jsonl", shadows, config.config_hash())]
