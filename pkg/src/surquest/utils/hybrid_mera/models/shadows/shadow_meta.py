from __future__ import annotations
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field


class ShadowMeta(BaseModel):
    """Provenance of a snapshot set.

    ``source`` is ``"ideal"`` or ``"noisy(<eta>)"``.
    """
    model_config = ConfigDict(frozen=True)

    seed: Optional[int] = None
    source: str = "ideal"
    params: Dict[str, Any] = Field(default_factory=dict)
