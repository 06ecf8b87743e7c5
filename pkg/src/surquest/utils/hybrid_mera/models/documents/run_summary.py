from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field


class RunSummary(BaseModel):
    """JSON summary written next to every optimization trace."""
    model_config = ConfigDict(extra="forbid")

    command: str
    config_hash: str
    seeds: Dict[str, int]
    e_qa: float
    e_final: float
    e_exact: Optional[float] = None
    relative_error_qa: Optional[float] = None
    relative_error_final: Optional[float] = None
    improvement_ratio: Optional[float] = None
    steps_run: int
    wall_time: float
    extra: Dict[str, Any] = Field(default_factory=dict)
