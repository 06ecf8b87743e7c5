from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class MeraConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    layers: int = Field(1, ge=1)
    init: Literal["identity", "random"] = "identity"
