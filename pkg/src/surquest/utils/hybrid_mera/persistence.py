"""
File formats: snapshot JSON lines, the MERA container, CSV tables and JSON summaries.

Floats are written with ``repr`` (shortest round-trip decimal) so equal runs
produce byte-identical files.
"""

from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, ValidationError

from .errors import ConfigurationError, ShadowSetError
from .models.documents import MeraDocument, SnapshotHeader, SnapshotRecord
from .models.mera import Mera
from .models.optimization import OptimizationTrace
from .models.shadows import ShadowMeta, ShadowSet, Snapshot

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

TRACE_COLUMNS = ["step", "energy", "std_err", "exact_energy"]


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def provenance_lines(config_hash: str, seeds: Dict[str, int]) -> List[str]:
    seed_text = ",".join(f"{name}={seeds[name]}" for name in sorted(seeds))
    return [f"config_hash={config_hash}", f"seeds={seed_text}"]


def write_csv(
    path: PathLike,
    columns: Sequence[str],
    rows: Iterable[Sequence],
    comments: Sequence[str] = (),
) -> Path:
    """CSV with ``# ``-prefixed comment lines before the header."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        for comment in comments:
            handle.write(f"# {comment}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format(value) for value in row])
    logger.info(f"Wrote {path}")
    return path


def read_csv(path: PathLike) -> List[Dict[str, str]]:
    with Path(path).open(encoding="utf-8") as handle:
        lines = [line for line in handle if not line.startswith("#")]
    return list(csv.DictReader(lines))


def write_trace_csv(
    path: PathLike, trace: OptimizationTrace, config_hash: str, seeds: Dict[str, int]
) -> Path:
    rows = (
        (record.step, record.energy, record.std_err, record.exact_energy)
        for record in trace.records
    )
    return write_csv(path, TRACE_COLUMNS, rows, provenance_lines(config_hash, seeds))


def write_json(path: PathLike, document: BaseModel) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(document.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def write_snapshots(
    path: PathLike, shadows: ShadowSet, config_hash: Optional[str] = None
) -> Path:
    """Header line ``{n_qubits, seed, source, s, ...}`` followed by one ``{"b", "o"}`` line per snapshot."""
    header = SnapshotHeader(
        n_qubits=shadows.n_qubits,
        seed=shadows.meta.seed,
        source=shadows.meta.source,
        s=shadows.size,
        params=shadows.meta.params,
        config_hash=config_hash,
    )
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        handle.write(header.model_dump_json() + "\n")
        for snap in shadows.snapshots:
            handle.write(SnapshotRecord(b=snap.bases, o=snap.outcomes).model_dump_json() + "\n")
    logger.info(f"Wrote {shadows.size} snapshots to {path}")
    return path


def read_snapshots(path: PathLike) -> ShadowSet:
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"snapshot file {path} does not exist")
    with path.open(encoding="utf-8") as handle:
        lines = [line for line in handle if line.strip()]
    if not lines:
        raise ShadowSetError(f"snapshot file {path} is empty")

    try:
        header = SnapshotHeader.model_validate_json(lines[0])
        records = [SnapshotRecord.model_validate_json(line) for line in lines[1:]]
        snapshots = [Snapshot(bases=record.b, outcomes=record.o) for record in records]
    except ValidationError as error:
        raise ShadowSetError(f"malformed snapshot file {path}: {error}") from error

    if len(snapshots) != header.s:
        raise ShadowSetError(f"{path} announces {header.s} snapshots but holds {len(snapshots)}")
    meta = ShadowMeta(seed=header.seed, source=header.source, params=header.params)
    if not snapshots:
        return ShadowSet(n_qubits=header.n_qubits, bases=[], outcomes=[], meta=meta)
    shadows = ShadowSet.from_snapshots(snapshots, meta)
    if shadows.n_qubits != header.n_qubits:
        raise ShadowSetError(
            f"{path} announces {header.n_qubits} qubits but holds {shadows.n_qubits}-qubit snapshots"
        )
    return shadows


def write_mera(
    path: PathLike,
    mera: Mera,
    config_hash: Optional[str] = None,
    seeds: Optional[Dict[str, int]] = None,
) -> Path:
    return write_json(path, MeraDocument.from_mera(mera, config_hash=config_hash, seeds=seeds))


def read_mera(path: PathLike) -> Mera:
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"MERA file {path} does not exist")
    return MeraDocument.model_validate_json(path.read_text(encoding="utf-8")).to_mera()
