from typing import Dict

from pydantic import BaseModel, ConfigDict

from ..circuits import Circuit


class CircuitDocument(BaseModel):
    """Gate-list dump of an annealing circuit with its provenance."""
    model_config = ConfigDict(extra="forbid")

    config_hash: str
    seeds: Dict[str, int]
    t_final: float
    dt: float
    circuit: Circuit
