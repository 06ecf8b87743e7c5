from __future__ import annotations

import hashlib
import json

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .analysis_config import AnalysisConfig
from .interface_config import InterfaceConfig
from .mera_config import MeraConfig
from .noise_config import NoiseConfig
from .optimizer_config import OptimizerConfig
from .schedule_config import ScheduleConfig
from .seeds_config import SeedsConfig
from .sweep_config import SweepConfig
from .system_config import SystemConfig

DESK_SITE_CAP = 12
LARGE_SITE_CAP = 24
# largest light-cone region on which snapshot gradients are contracted
SHADOW_REGION_CAP = 10


class ExperimentConfig(BaseModel):
    """One experiment; unknown keys are rejected at every level and all seeds are required."""
    model_config = ConfigDict(extra="forbid")

    system: SystemConfig
    schedule: ScheduleConfig = Field(default_factory=ScheduleConfig)
    mera: MeraConfig = Field(default_factory=MeraConfig)
    optimizer: OptimizerConfig = Field(default_factory=OptimizerConfig)
    interface: InterfaceConfig = Field(default_factory=InterfaceConfig)
    noise: NoiseConfig = Field(default_factory=NoiseConfig)
    seeds: SeedsConfig
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    analysis: AnalysisConfig = Field(default_factory=AnalysisConfig)
    large: bool = False

    @model_validator(mode="after")
    def _check_sizes(self) -> "ExperimentConfig":
        n = self.system.n
        cap = LARGE_SITE_CAP if self.large else DESK_SITE_CAP
        if n > cap:
            hint = "" if self.large else " (pass --large for up to 24 sites)"
            raise ValueError(f"n = {n} exceeds the site cap of {cap}{hint}")
        if self.system.boundary == "periodic" and n % 2:
            raise ValueError(f"periodic chains need an even site count, got {n}")
        if n % 2**self.mera.layers:
            raise ValueError(f"n = {n} is not divisible by 2^{self.mera.layers}")
        region = min(n, 3 * 2**self.mera.layers)
        if self.interface.kind == "shadow" and region > SHADOW_REGION_CAP:
            raise ValueError(
                f"{self.mera.layers} layers on {n} sites give light cones of up to {region} qubits; "
                f"snapshot gradients are capped at {SHADOW_REGION_CAP}"
            )
        return self

    def config_hash(self) -> str:
        """SHA-256 of the canonical (sorted-key, compact) JSON dump."""
        canonical = json.dumps(
            self.model_dump(mode="json"), sort_keys=True, separators=(",", ":")
        )
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def with_seed_override(self, seed: int) -> "ExperimentConfig":
        """Copy with all three seeds derived from ``seed``."""
        seeds = SeedsConfig(circuit=seed, shadows=seed + 1, optimizer=seed + 2)
        return self.model_copy(update={"seeds": seeds})
