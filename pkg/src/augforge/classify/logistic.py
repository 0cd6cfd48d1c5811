"""Multinomial logistic regression trained by full-batch Adam.

Loss: mean cross-entropy plus an L2 penalty on the weights (not the
bias), l2/(2N) * sum(W^2), matching the usual per-sample scaling.
Training stops when the gradient max-norm drops below ``tol`` or the
epoch budget runs out; the model carries a ``converged`` flag either way.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import RejectedInput, TrainingFailure
from ..nncore import Adam


@dataclass
class LogisticConfig:
    learning_rate: float = 0.05
    l2: float = 1.0
    max_epochs: int = 2000
    tol: float = 1e-5


class LogisticModel:
    def __init__(self, weights, bias, l2, converged, epochs_run, loss_history):
        self.weights = weights
        self.bias = bias
        self.l2 = l2
        self.converged = converged
        self.epochs_run = epochs_run
        self.loss_history = loss_history

    @property
    def n_classes(self):
        return self.weights.shape[1]

    def predict_proba(self, X):
        X = np.asarray(X, dtype=np.float64)
        logits = X @ self.weights + self.bias
        logits -= logits.max(axis=1, keepdims=True)
        ex = np.exp(logits)
        return ex / ex.sum(axis=1, keepdims=True)

    def predict(self, X):
        return self.predict_proba(X).argmax(axis=1)


def train_logistic_regression(X, Y, cfg=None):
    cfg = cfg or LogisticConfig()
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.int64)
    classes = np.unique(Y)
    if len(classes) < 2:
        raise RejectedInput("need at least 2 classes present")
    n, f = X.shape
    k = int(Y.max()) + 1
    onehot = np.eye(k)[Y]

    w = np.zeros((f, k))
    b = np.zeros(k)
    opt = Adam([w, b], learning_rate=cfg.learning_rate)
    history = []
    converged = False
    epoch = 0
    for epoch in range(1, cfg.max_epochs + 1):
        logits = X @ w + b
        logits -= logits.max(axis=1, keepdims=True)
        ex = np.exp(logits)
        probs = ex / ex.sum(axis=1, keepdims=True)
        ce = -np.log(np.clip(probs[np.arange(n), Y], 1e-12, None)).mean()
        value = ce + cfg.l2 * 0.5 * float((w * w).sum()) / n
        if not np.isfinite(value):
            raise TrainingFailure(f"logistic loss became non-finite at epoch {epoch}", epoch=epoch)
        history.append(value)
        dlogits = (probs - onehot) / n
        dw = X.T @ dlogits + cfg.l2 * w / n
        db = dlogits.sum(axis=0)
        if max(np.abs(dw).max(), np.abs(db).max()) < cfg.tol:
            converged = True
            break
        opt.step([dw, db])
    return LogisticModel(
        weights=w,
        bias=b,
        l2=cfg.l2,
        converged=converged,
        epochs_run=epoch,
        loss_history=history,
    )
