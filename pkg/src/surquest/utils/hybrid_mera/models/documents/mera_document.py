from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict

from ..mera import Mera, MeraTensor

MERA_FORMAT_VERSION = 1


class MeraDocument(BaseModel):
    """Versioned JSON container of a MERA: wiring plus row-major complex matrices."""
    model_config = ConfigDict(extra="forbid")

    format: Literal["hybrid-mera"] = "hybrid-mera"
    version: Literal[1] = MERA_FORMAT_VERSION
    n_sites: int
    n_layers: int
    tensors: List[MeraTensor]
    config_hash: Optional[str] = None
    seeds: Optional[Dict[str, int]] = None

    @classmethod
    def from_mera(cls, mera: Mera, **provenance) -> "MeraDocument":
        return cls(
            n_sites=mera.n_sites,
            n_layers=mera.n_layers,
            tensors=list(mera.tensors),
            **provenance,
        )

    def to_mera(self) -> Mera:
        return Mera(n_sites=self.n_sites, n_layers=self.n_layers, tensors=tuple(self.tensors))
