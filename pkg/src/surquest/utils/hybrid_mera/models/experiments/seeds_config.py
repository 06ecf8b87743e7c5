from pydantic import BaseModel, ConfigDict


class SeedsConfig(BaseModel):
    """Every stochastic stage has its own explicit seed."""
    model_config = ConfigDict(extra="forbid")

    circuit: int
    shadows: int
    optimizer: int
