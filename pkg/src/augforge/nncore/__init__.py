"""Minimal dense-layer neural network core.

Forward/backward passes for dense, batch-norm, activation and dropout
layers, the three losses used by the models in this package, and an Adam
optimizer. Everything is float64 numpy; matrices are 2-D row-major
arrays, one sample per row.
"""

from .layers import (
    BatchNorm,
    Dense,
    Dropout,
    LeakyReLU,
    Sigmoid,
    Softmax,
    glorot_uniform,
)
from .network import Network
from .losses import (
    LOSS_EPS,
    binary_cross_entropy,
    categorical_cross_entropy,
    loss_fn,
    mean_squared_error,
)
from .adam import Adam

__all__ = [
    "Adam",
    "BatchNorm",
    "Dense",
    "Dropout",
    "LeakyReLU",
    "LOSS_EPS",
    "Network",
    "Sigmoid",
    "Softmax",
    "binary_cross_entropy",
    "categorical_cross_entropy",
    "glorot_uniform",
    "loss_fn",
    "mean_squared_error",
]
