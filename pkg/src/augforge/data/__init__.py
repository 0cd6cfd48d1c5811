"""Dataset construction and ingestion."""

from .dataset import (
    Dataset,
    NormalizationRecord,
    Split,
    apply_normalization,
    fit_normalization,
    invert_normalization,
    normalize,
)
from .idx import load_idx, read_idx, write_idx
from .csvio import load_csv, save_csv
from .mnist import subset_mnist
from .synth import SynthConfig, synth_hallam

__all__ = [
    "Dataset",
    "NormalizationRecord",
    "Split",
    "SynthConfig",
    "apply_normalization",
    "fit_normalization",
    "invert_normalization",
    "load_csv",
    "load_idx",
    "normalize",
    "read_idx",
    "save_csv",
    "subset_mnist",
    "synth_hallam",
    "write_idx",
]
