from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class TraceRecord(BaseModel):
    """Recorded energy after ``step`` updates; ``std_err`` is 0 for the exact interface."""
    model_config = ConfigDict(frozen=True)

    step: int = Field(..., ge=0)
    energy: float
    std_err: float = Field(0.0, ge=0.0)
    exact_energy: Optional[float] = None
    wall_time: float = Field(0.0, ge=0.0)
