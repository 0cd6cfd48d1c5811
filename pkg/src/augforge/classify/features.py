"""Feature selection: non-zero column filtering and recursive elimination."""

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyFeatureSet, RejectedInput
from .logistic import LogisticConfig, train_logistic_regression


@dataclass
class FeatureMask:
    """Ordered list of retained column indices plus where they came from."""

    indices: list
    source: str
    original_count: int

    def __post_init__(self):
        idx = list(self.indices)
        if any(i < 0 or i >= self.original_count for i in idx):
            raise RejectedInput("mask index out of range")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise RejectedInput("mask indices must be strictly increasing")
        self.indices = idx

    def apply(self, X):
        return np.asarray(X, dtype=np.float64)[:, self.indices]

    def __len__(self):
        return len(self.indices)

    def to_dict(self):
        return {
            "indices": list(self.indices),
            "source": self.source,
            "original_count": self.original_count,
        }


def compose_masks(outer, inner):
    """Map ``inner`` (built on outer-masked columns) back to original indices."""
    if inner.original_count != len(outer.indices):
        raise RejectedInput(
            f"inner mask built on {inner.original_count} columns,"
            f" outer retains {len(outer.indices)}"
        )
    return FeatureMask(
        indices=[outer.indices[i] for i in inner.indices],
        source=f"{outer.source}+{inner.source}",
        original_count=outer.original_count,
    )


def filter_nonzero_columns(X, zero_fraction_threshold=0.5):
    """Retain columns whose fraction of exact zeros is <= threshold."""
    X = np.asarray(X, dtype=np.float64)
    if X.size == 0:
        raise RejectedInput("empty matrix")
    zero_frac = (X == 0.0).mean(axis=0)
    keep = np.flatnonzero(zero_frac <= zero_fraction_threshold)
    if len(keep) == 0:
        raise EmptyFeatureSet("non-zero filtering removed every column")
    return FeatureMask(indices=keep.tolist(), source="nz", original_count=X.shape[1])


def rfe(X, Y, target_count, cfg=None):
    """Recursive feature elimination, one column per round.

    Each round fits a logistic regression on the remaining columns and
    drops the one whose weight column has the smallest L2 norm across
    classes. Constant columns are dropped first, lowest index first,
    without fitting.
    """
    X = np.asarray(X, dtype=np.float64)
    f = X.shape[1]
    if not 1 <= target_count <= f:
        raise RejectedInput(f"target_count {target_count} not in [1, {f}]")
    cfg = cfg or LogisticConfig()
    current = list(range(f))
    while len(current) > target_count:
        view = X[:, current]
        spans = view.max(axis=0) - view.min(axis=0)
        constant = np.flatnonzero(spans == 0.0)
        if len(constant):
            drop = int(constant[0])
        else:
            model = train_logistic_regression(view, Y, cfg)
            importance = np.sqrt((model.weights ** 2).sum(axis=1))
            drop = int(importance.argmin())
        current.pop(drop)
    return FeatureMask(indices=current, source="rfe", original_count=f)
