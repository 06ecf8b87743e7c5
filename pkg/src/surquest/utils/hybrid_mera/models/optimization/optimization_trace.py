from __future__ import annotations
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..mera import Mera
from .trace_record import TraceRecord


class OptimizationTrace(BaseModel):
    """Per-step records of one optimization run plus its final MERA."""
    model_config = ConfigDict(frozen=True)

    records: List[TraceRecord]
    final_mera: Mera
    config: Dict[str, Any] = Field(default_factory=dict)
    protocol: Optional[str] = None
    early_stopped: bool = False

    @property
    def energies(self) -> List[float]:
        return [record.energy for record in self.records]

    @property
    def initial_energy(self) -> float:
        return self.records[0].energy

    @property
    def final_energy(self) -> float:
        return self.records[-1].energy

    def best_so_far(self) -> List[float]:
        """Running minimum of the recorded energies."""
        best, out = float("inf"), []
        for record in self.records:
            best = min(best, record.energy)
            out.append(best)
        return out
