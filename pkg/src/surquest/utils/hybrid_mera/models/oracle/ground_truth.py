from typing import Optional

from pydantic import BaseModel, ConfigDict

from ..circuits import Statevector


class GroundTruth(BaseModel):
    """Reference ground energy, with the eigenvector when it was computed."""
    model_config = ConfigDict(frozen=True)

    e0: float
    vector: Optional[Statevector] = None
