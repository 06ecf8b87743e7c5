from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class EstimatorResult(BaseModel):
    """Sample mean of the per-snapshot weights and its standard error."""
    model_config = ConfigDict(frozen=True)

    mean: float
    std_err: float = Field(..., ge=0.0)
    s_used: int = Field(..., ge=1)
