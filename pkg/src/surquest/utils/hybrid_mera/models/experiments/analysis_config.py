from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field


class AnalysisConfig(BaseModel):
    """Inputs of the variance analysis and of the snapshot forecasts."""
    model_config = ConfigDict(extra="forbid")

    s: int = Field(10_000, ge=2)
    random_instances: int = Field(10, ge=0)
    var_ref: float = Field(0.0033, gt=0.0)
    s_ref: int = Field(100_000, ge=1)
    delta_e: float = Field(0.07, gt=0.0)
    f: float = Field(0.25, gt=0.0)
    eps: float = Field(0.1, gt=0.0)
    m_obs: Optional[int] = Field(None, ge=1)
    max_norm: float = Field(1.0, gt=0.0)
    layers: List[int] = Field(default_factory=lambda: [1, 2])
