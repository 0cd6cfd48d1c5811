"""The iterative augmentation loop and its similarity-gated variant."""

from ..data import Split
from .similarity import SimilarityReport, pairwise_similarity
from .loop import (
    AugmentationResult,
    AugmentationState,
    IterationRecord,
    run_augmentation,
    run_gated_augmentation,
)
from .trace import TRACE_COLUMNS, read_trace_csv, write_trace_csv, write_trace_json

__all__ = [
    "AugmentationResult",
    "AugmentationState",
    "IterationRecord",
    "SimilarityReport",
    "Split",
    "TRACE_COLUMNS",
    "pairwise_similarity",
    "read_trace_csv",
    "run_augmentation",
    "run_gated_augmentation",
    "write_trace_csv",
    "write_trace_json",
]
