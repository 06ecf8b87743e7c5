from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class SystemConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int = Field(..., ge=2)
    j: float = -1.0
    lam: float = 1.0
    boundary: Literal["open", "periodic"] = "periodic"
