from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class WorstCaseEntry(BaseModel):
    layers: int
    locality: int
    prefactor: int
    bound: int


class AnalysisReport(BaseModel):
    """Variance analysis of one (MERA, snapshot set) pair with snapshot forecasts."""
    model_config = ConfigDict(extra="forbid")

    config_hash: str
    seeds: Dict[str, int]
    s: int
    contributions: Dict[int, float]
    total_variance: float
    random_total_variance: Optional[float] = None
    random_instances: int = 0
    forecast_anchor: int
    forecast_measured: Optional[int] = None
    worst_case: List[WorstCaseEntry] = Field(default_factory=list)
