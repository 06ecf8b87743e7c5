from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator


class NoiseModel(BaseModel):
    """Synthetic readout, depolarizing and relaxation noise.

    ``t1``/``t2``/``t_g`` share one time unit; infinite times switch the
    corresponding relaxation channel off.
    """
    model_config = ConfigDict(frozen=True, extra="forbid", ser_json_inf_nan="constants")

    e_ro: float = Field(0.0, ge=0.0, le=1.0)
    p1: float = Field(0.0, ge=0.0, le=1.0)
    p2: float = Field(0.0, ge=0.0, le=1.0)
    t1: float = Field(math.inf, gt=0.0)
    t2: float = Field(math.inf, gt=0.0)
    t_g: float = Field(1.0, gt=0.0)

    @model_validator(mode="after")
    def _check_times(self) -> "NoiseModel":
        if self.t2 > 2.0 * self.t1:
            raise ValueError(f"t2 = {self.t2!r} exceeds 2 * t1 = {2.0 * self.t1!r}")
        return self

    @classmethod
    def noiseless(cls) -> "NoiseModel":
        return cls()

    @classmethod
    def default(cls) -> "NoiseModel":
        """Representative (not calibrated) superconducting-device profile in microseconds."""
        return cls(e_ro=0.015, p1=3e-4, p2=4e-3, t1=180.0, t2=120.0, t_g=0.068)

    @property
    def is_noise_free(self) -> bool:
        return (
            self.e_ro == 0.0
            and self.p1 == 0.0
            and self.p2 == 0.0
            and math.isinf(self.t1)
            and math.isinf(self.t2)
        )

    @property
    def damping_probability(self) -> float:
        """Per-layer amplitude-damping probability ``1 - exp(-t_g / t1)``."""
        return -math.expm1(-self.t_g / self.t1)

    @property
    def dephasing_probability(self) -> float:
        """Per-layer Z-flip probability of the pure dephasing left after removing T1."""
        rate = 1.0 / self.t2 - 0.5 / self.t1
        if rate <= 0.0:
            return 0.0
        return -0.5 * math.expm1(-self.t_g * rate)
