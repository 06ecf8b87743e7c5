from typing import List

from pydantic import BaseModel, ConfigDict, Field


class SweepConfig(BaseModel):
    """(t_final, dt) grid of the annealing sweep."""
    model_config = ConfigDict(extra="forbid")

    t_finals: List[float] = Field(default_factory=lambda: [2.0, 5.0, 10.0], min_length=1)
    dts: List[float] = Field(default_factory=lambda: [0.8, 0.4, 0.2, 0.1, 0.05], min_length=1)
    depth_target: int = Field(200, ge=1)
    workers: int = Field(1, ge=1)
