from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

STEP_TOLERANCE = 1e-9


class AnnealingSchedule(BaseModel):
    """Linear coupling ramp ``J(t) = j_final * t / t_final`` at constant field ``lam``.

    The defaults reproduce ``J(t) = -t / t_final`` and ``lambda(t) = 1``.
    """
    model_config = ConfigDict(frozen=True)

    t_final: float = Field(..., gt=0)
    dt: float = Field(..., gt=0)
    j_final: float = -1.0
    lam: float = 1.0

    @model_validator(mode="after")
    def _check_steps(self) -> "AnnealingSchedule":
        ratio = self.t_final / self.dt
        if round(ratio) < 1 or abs(ratio - round(ratio)) > STEP_TOLERANCE:
            raise ValueError(
                f"t_final / dt = {ratio!r} is not a positive integer number of steps"
            )
        return self

    @computed_field
    @property
    def n_steps(self) -> int:
        return int(round(self.t_final / self.dt))

    def coupling(self, t: float) -> float:
        """J(t)."""
        return self.j_final * t / self.t_final

    def field(self, t: float) -> float:
        """lambda(t)."""
        return self.lam
