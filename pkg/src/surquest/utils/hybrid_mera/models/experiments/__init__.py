from .protocol_kind import ProtocolKind
from .system_config import SystemConfig
from .schedule_config import ScheduleConfig
from .mera_config import MeraConfig
from .optimizer_config import OptimizerConfig
from .interface_config import InterfaceConfig
from .noise_config import NoiseConfig
from .seeds_config import SeedsConfig
from .sweep_config import SweepConfig
from .analysis_config import AnalysisConfig
from .experiment_config import DESK_SITE_CAP, LARGE_SITE_CAP, SHADOW_REGION_CAP, ExperimentConfig

__all__ = [
    "ProtocolKind",
    "SystemConfig",
    "ScheduleConfig",
    "MeraConfig",
    "OptimizerConfig",
    "InterfaceConfig",
    "NoiseConfig",
    "SeedsConfig",
    "SweepConfig",
    "AnalysisConfig",
    "DESK_SITE_CAP",
    "LARGE_SITE_CAP",
    "SHADOW_REGION_CAP",
    "ExperimentConfig",
]
