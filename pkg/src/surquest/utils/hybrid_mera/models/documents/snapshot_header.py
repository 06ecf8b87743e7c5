from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field


class SnapshotHeader(BaseModel):
    """First line of a snapshot JSON-lines file; infinite noise times are written as ``Infinity``."""
    model_config = ConfigDict(extra="forbid", ser_json_inf_nan="constants")

    n_qubits: int = Field(..., gt=0)
    seed: Optional[int] = None
    source: str
    s: int = Field(..., ge=0)
    params: Dict[str, Any] = Field(default_factory=dict)
    config_hash: Optional[str] = None
