from .ground_truth import GroundTruth

__all__ = [
    "GroundTruth",
]
