from .annealing_schedule import AnnealingSchedule
from .gates import BlockGate, Gate, RXGate, RZZGate
from .circuit import Circuit
from .statevector import Statevector
from .noise_model import NoiseModel

__all__ = [
    "AnnealingSchedule",
    "BlockGate",
    "Gate",
    "RXGate",
    "RZZGate",
    "Circuit",
    "Statevector",
    "NoiseModel",
]
