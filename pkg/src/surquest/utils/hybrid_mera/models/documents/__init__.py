from .snapshot_header import SnapshotHeader
from .snapshot_record import SnapshotRecord
from .mera_document import MERA_FORMAT_VERSION, MeraDocument
from .circuit_document import CircuitDocument
from .run_summary import RunSummary
from .analysis_report import AnalysisReport, WorstCaseEntry

__all__ = [
    "SnapshotHeader",
    "SnapshotRecord",
    "MERA_FORMAT_VERSION",
    "MeraDocument",
    "CircuitDocument",
    "RunSummary",
    "AnalysisReport",
    "WorstCaseEntry",
]
