from .adam_state import AdamState
from .trace_record import TraceRecord
from .optimization_trace import OptimizationTrace

__all__ = [
    "AdamState",
    "TraceRecord",
    "OptimizationTrace",
]
