from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from .protocol_kind import ProtocolKind


class InterfaceConfig(BaseModel):
    """Exact statevector interface or shadow interface with ``s`` snapshots per pool."""
    model_config = ConfigDict(extra="forbid")

    kind: Literal["exact", "shadow"] = "exact"
    s: int = Field(100_000, ge=1)
    protocol: ProtocolKind = ProtocolKind.RESAMPLE_INDEPENDENT
    evaluation_s: Optional[int] = Field(None, ge=1)
