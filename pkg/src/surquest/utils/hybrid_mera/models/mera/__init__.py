from .mera_tensor import MeraTensor
from .mera import Mera, mera_wiring
from .transformed_operator import TransformedOperator
from .gradient_set import GradientSet

__all__ = [
    "MeraTensor",
    "Mera",
    "mera_wiring",
    "TransformedOperator",
    "GradientSet",
]
