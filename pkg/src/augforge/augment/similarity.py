"""Normalized pairwise distance between two feature matrices.

Distance is the mean absolute per-feature difference, averaged over row
pairs: row i against row i when the matrices have the same height, every
cross pair otherwise. With features in [0, 1] the result is in [0, 1]:
0 for identical matrices, 1 for maximally separated ones.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import RejectedInput, ShapeMismatch


@dataclass
class SimilarityReport:
    mean_distance: float
    per_column: np.ndarray

    def to_dict(self):
        return {"mean_distance": self.mean_distance, "per_column": self.per_column.tolist()}


def pairwise_similarity(A, B):
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.size == 0 or B.size == 0:
        raise RejectedInput("similarity needs non-empty matrices")
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[1]:
        raise ShapeMismatch(f"column counts differ: {A.shape} vs {B.shape}")
    if A.shape[0] == B.shape[0]:
        per_column = np.abs(A - B).mean(axis=0)
    else:
        per_column = np.empty(A.shape[1])
        for j in range(A.shape[1]):
            per_column[j] = np.abs(A[:, j][:, None] - B[:, j][None, :]).mean()
    return SimilarityReport(mean_distance=float(per_column.mean()), per_column=per_column)
