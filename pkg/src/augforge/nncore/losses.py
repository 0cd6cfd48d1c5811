"""Loss functions.

Each returns ``(value, grad)`` where ``grad`` is the gradient of the
value with respect to the prediction. The reduction convention is: sum
over feature columns, mean over batch rows, so per-sample losses stay
comparable when the feature count changes.

Cross-entropy inputs are clamped to [LOSS_EPS, 1-LOSS_EPS] before any
log, so no finite input can produce NaN. The gradient is the gradient
of the clamped function (zero outside the clamp window).
"""

import numpy as np

from ..errors import InvalidHyperparameter, ShapeMismatch

LOSS_EPS = 1e-7


def _check(prediction, target):
    prediction = np.asarray(prediction, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if prediction.shape != target.shape:
        raise ShapeMismatch(
            f"prediction shape {prediction.shape} != target shape {target.shape}"
        )
    if prediction.ndim != 2:
        prediction = prediction.reshape(1, -1)
        target = target.reshape(1, -1)
    return prediction, target


def mean_squared_error(prediction, target):
    prediction, target = _check(prediction, target)
    n = prediction.shape[0]
    diff = prediction - target
    value = float((diff * diff).sum() / n)
    return value, 2.0 * diff / n


def binary_cross_entropy(prediction, target):
    prediction, target = _check(prediction, target)
    n = prediction.shape[0]
    clamped = np.clip(prediction, LOSS_EPS, 1.0 - LOSS_EPS)
    value = float(-(target * np.log(clamped) + (1.0 - target) * np.log(1.0 - clamped)).sum() / n)
    inside = (prediction > LOSS_EPS) & (prediction < 1.0 - LOSS_EPS)
    grad = np.where(inside, (clamped - target) / (clamped * (1.0 - clamped)), 0.0) / n
    return value, grad


def categorical_cross_entropy(prediction, target):
    prediction, target = _check(prediction, target)
    n = prediction.shape[0]
    clamped = np.clip(prediction, LOSS_EPS, 1.0 - LOSS_EPS)
    value = float(-(target * np.log(clamped)).sum() / n)
    inside = (prediction > LOSS_EPS) & (prediction < 1.0 - LOSS_EPS)
    grad = np.where(inside, -target / clamped, 0.0) / n
    return value, grad


_LOSSES = {
    "binary_cross_entropy": binary_cross_entropy,
    "categorical_cross_entropy": categorical_cross_entropy,
    "mean_squared_error": mean_squared_error,
    "bce": binary_cross_entropy,
    "cce": categorical_cross_entropy,
    "mse": mean_squared_error,
}


def loss_fn(kind):
    try:
        return _LOSSES[kind]
    except KeyError:
        raise InvalidHyperparameter(f"unknown loss kind {kind!r}") from None
