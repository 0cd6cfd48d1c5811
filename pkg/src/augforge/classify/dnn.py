"""Two-hidden-block DNN classifier used to evaluate synthesized samples.

Each hidden block is dense -> batch norm -> leaky ReLU -> dropout; the
head is dense -> softmax. Trained with Adam and early stopping on a
held-out pool: when the eval loss fails to improve for ``patience``
epochs, training stops and the best-epoch parameters (including batch
norm running statistics) are restored.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import RejectedInput, TrainingFailure
from ..nncore import (
    Adam,
    BatchNorm,
    Dense,
    Dropout,
    LeakyReLU,
    Network,
    Softmax,
    categorical_cross_entropy,
)


@dataclass
class DnnConfig:
    hidden: tuple = (64, 32)
    dropout: float = 0.3
    leaky_alpha: float = 0.2
    learning_rate: float = 1e-3
    batch_size: int = 32
    max_epochs: int = 500
    patience: int = 20
    seed: int = 0


class DnnClassifier:
    def __init__(self, net, n_classes, feature_dim, eval_loss_history, best_epoch):
        self.net = net
        self.n_classes = n_classes
        self.feature_dim = feature_dim
        self.eval_loss_history = eval_loss_history
        self.best_epoch = best_epoch

    def predict_proba(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.shape[1] != self.feature_dim:
            raise RejectedInput(f"expected {self.feature_dim} features, got {X.shape[1]}")
        return self.net.forward(X, training=False)

    def predict(self, X):
        return self.predict_proba(X).argmax(axis=1)


def build_classifier_net(feature_dim, n_classes, cfg, rng):
    layers = []
    width_in = feature_dim
    for width in cfg.hidden:
        layers += [
            Dense(width_in, width, rng),
            BatchNorm(width),
            LeakyReLU(cfg.leaky_alpha),
            Dropout(cfg.dropout, rng),
        ]
        width_in = width
    layers += [Dense(width_in, n_classes, rng), Softmax()]
    return Network(layers)


def _effective_batch(n, batch_size):
    return n if n < 64 else min(batch_size, n)


def train_dnn(train_X, train_Y, eval_X, eval_Y, n_classes=None, cfg=None):
    cfg = cfg or DnnConfig()
    train_X = np.asarray(train_X, dtype=np.float64)
    train_Y = np.asarray(train_Y, dtype=np.int64)
    eval_X = np.asarray(eval_X, dtype=np.float64)
    eval_Y = np.asarray(eval_Y, dtype=np.int64)
    if len(train_X) == 0 or len(eval_X) == 0:
        raise RejectedInput("train and eval pools must be non-empty")
    if n_classes is None:
        n_classes = int(max(train_Y.max(), eval_Y.max())) + 1
    if train_Y.min() < 0 or train_Y.max() >= n_classes:
        raise RejectedInput("labels out of range")

    rng = np.random.default_rng(cfg.seed)
    net = build_classifier_net(train_X.shape[1], n_classes, cfg, rng)
    opt = Adam(net.params(), learning_rate=cfg.learning_rate)
    onehot_eval = np.eye(n_classes)[eval_Y]
    batch = _effective_batch(len(train_X), cfg.batch_size)

    best_loss = np.inf
    best_state = net.get_state()
    best_epoch = 0
    wait = 0
    history = []
    for epoch in range(1, cfg.max_epochs + 1):
        order = rng.permutation(len(train_X))
        for start in range(0, len(order), batch):
            ids = order[start : start + batch]
            if len(ids) < 2:  # batch norm cannot run on one row
                continue
            out = net.forward(train_X[ids], training=True)
            value, grad = categorical_cross_entropy(out, np.eye(n_classes)[train_Y[ids]])
            if not np.isfinite(value):
                raise TrainingFailure(f"classifier loss non-finite at epoch {epoch}", epoch=epoch)
            net.backward(grad)
            opt.step(net.grads())
        eval_out = net.forward(eval_X, training=False)
        eval_loss, _ = categorical_cross_entropy(eval_out, onehot_eval)
        if not np.isfinite(eval_loss):
            raise TrainingFailure(f"eval loss non-finite at epoch {epoch}", epoch=epoch)
        history.append(eval_loss)
        if eval_loss < best_loss:
            best_loss = eval_loss
            best_state = net.get_state()
            best_epoch = epoch
            wait = 0
        else:
            wait += 1
            if wait > cfg.patience:
                break
    net.set_state(best_state)
    return DnnClassifier(
        net=net,
        n_classes=n_classes,
        feature_dim=train_X.shape[1],
        eval_loss_history=history,
        best_epoch=best_epoch,
    )
