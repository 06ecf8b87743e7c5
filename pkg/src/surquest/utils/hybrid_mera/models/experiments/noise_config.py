from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..circuits import NoiseModel


class NoiseConfig(BaseModel):
    """Noise applied to the annealing circuit; ``model`` is scaled by ``eta``.

    ``etas`` lists the strengths of a noisy-optimization sweep (defaults to ``[eta]``);
    ``trajectories=None`` simulates one fresh trajectory per snapshot.
    """
    model_config = ConfigDict(extra="forbid")

    enabled: bool = False
    eta: float = Field(1.0, ge=0.0)
    etas: Optional[List[float]] = None
    model: NoiseModel = Field(default_factory=NoiseModel.default)
    trajectories: Optional[int] = Field(256, ge=1)

    @property
    def strengths(self) -> List[float]:
        return list(self.etas) if self.etas else [self.eta]
