from pydantic import BaseModel, ConfigDict, Field


class ScheduleConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    t_final: float = Field(10.0, gt=0.0)
    dt: float = Field(0.1, gt=0.0)
