from enum import Enum


class ProtocolKind(str, Enum):
    """How snapshot pools are shared between gradients and recorded energies."""

    FIXED_SHARED = "i"
    FIXED_SPLIT = "ii"
    RESAMPLE_SHARED = "iii"
    RESAMPLE_INDEPENDENT = "iv"
