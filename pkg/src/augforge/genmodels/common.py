"""Shared network-building helpers."""

import numpy as np

from ..errors import RejectedInput
from ..nncore import BatchNorm, Dense, Dropout, LeakyReLU

def hidden_stack(in_dim, widths, cfg, rng):
    """Hidden blocks of dense -> batch norm -> leaky ReLU -> dropout."""
    layers = []
    dim = in_dim
    for width in widths:
        layers += [
            Dense(dim, width, rng),
            BatchNorm(width),
            LeakyReLU(cfg.leaky_alpha),
            Dropout(cfg.dropout, rng),
        ]
        dim = width
    return layers, dim


def check_labels(Y):
    """Labels must be dense class ids with every class present."""
    Y = np.asarray(Y, dtype=np.int64)
    if Y.ndim != 1 or len(Y) == 0:
        raise RejectedInput("labels must be a non-empty 1-D array")
    k = int(Y.max()) + 1
    present = np.unique(Y)
    if Y.min() < 0 or len(present) != k:
        raise RejectedInput(f"labels must span 0..{k - 1}, got classes {present.tolist()}")
    return Y, k


def check_unit_features(X, minimum_rows=2):
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < minimum_rows:
        raise RejectedInput(f"need a 2-D matrix with >= {minimum_rows} rows, got {X.shape}")
    if X.min() < 0.0 or X.max() > 1.0:
        raise RejectedInput("features must be normalized to [0, 1] before training")
    return X
