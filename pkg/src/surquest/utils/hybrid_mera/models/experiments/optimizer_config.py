from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class OptimizerConfig(BaseModel):
    """Riemannian ADAM settings; ``early_stop`` is a gradient-norm threshold (off when unset)."""
    model_config = ConfigDict(extra="forbid")

    steps: int = Field(1000, ge=0)
    alpha: float = Field(0.01, gt=0.0)
    beta1: float = Field(0.9, ge=0.0, lt=1.0)
    beta2: float = Field(0.999, ge=0.0, lt=1.0)
    eps: float = Field(1e-8, gt=0.0)
    early_stop: Optional[float] = Field(None, gt=0.0)
