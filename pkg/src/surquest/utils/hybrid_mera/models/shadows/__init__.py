from .snapshot import Snapshot, BASES
from .shadow_meta import ShadowMeta
from .shadow_set import ShadowSet
from .estimator_result import EstimatorResult

__all__ = [
    "Snapshot",
    "BASES",
    "ShadowMeta",
    "ShadowSet",
    "EstimatorResult",
]
