from pydantic import BaseModel, ConfigDict


class SnapshotRecord(BaseModel):
    """One snapshot line: basis letters ``b`` and outcome bits ``o``."""
    model_config = ConfigDict(extra="forbid")

    b: str
    o: str
