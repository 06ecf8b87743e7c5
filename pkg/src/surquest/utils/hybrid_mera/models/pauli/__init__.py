from .pauli_string import PauliString
from .pauli_term import PauliTerm
from .pauli_sum import PauliSum, DEFAULT_DROP_THRESHOLD
from .supported_operator import SupportedOperator

__all__ = [
    "PauliString",
    "PauliTerm",
    "PauliSum",
    "DEFAULT_DROP_THRESHOLD",
    "SupportedOperator",
]
