"""Precision, recall and F-score from a confusion matrix.

Zero-denominator classes score 0 by convention. Macro averaging is the
unweighted mean of per-class values; weighted averaging weights by class
support in the true labels.
"""

from dataclasses import dataclass, field

import numpy as np

from ..errors import RejectedInput


@dataclass
class Metrics:
    precision: float
    recall: float
    f_score: float
    averaging: str
    per_class_precision: list = field(default_factory=list)
    per_class_recall: list = field(default_factory=list)
    per_class_f: list = field(default_factory=list)
    support: list = field(default_factory=list)

    def to_dict(self):
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f_score": self.f_score,
            "averaging": self.averaging,
            "per_class_precision": list(self.per_class_precision),
            "per_class_recall": list(self.per_class_recall),
            "per_class_f": list(self.per_class_f),
            "support": list(self.support),
        }


def confusion_matrix(y_true, y_pred, n_classes):
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if y_true.shape != y_pred.shape:
        raise RejectedInput("prediction/label count mismatch")
    cm = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(cm, (y_true, y_pred), 1)
    return cm


def metrics_from_predictions(y_true, y_pred, n_classes, averaging="macro"):
    if averaging not in ("macro", "weighted"):
        raise RejectedInput(f"unknown averaging mode {averaging!r}")
    y_true = np.asarray(y_true, dtype=np.int64)
    if len(y_true) == 0:
        raise RejectedInput("empty label set")
    cm = confusion_matrix(y_true, y_pred, n_classes)
    tp = np.diag(cm).astype(np.float64)
    pred_count = cm.sum(axis=0).astype(np.float64)
    true_count = cm.sum(axis=1).astype(np.float64)
    with np.errstate(invalid="ignore", divide="ignore"):
        precision = np.where(pred_count > 0, tp / pred_count, 0.0)
        recall = np.where(true_count > 0, tp / true_count, 0.0)
        denom = precision + recall
        f = np.where(denom > 0, 2.0 * precision * recall / np.where(denom > 0, denom, 1.0), 0.0)
    if averaging == "macro":
        weights = [1.0 / n_classes] * n_classes
    else:
        total = float(true_count.sum())
        weights = [float(c) / total for c in true_count]
    # sequential sums keep the result reproducible by a plain-Python oracle
    return Metrics(
        precision=sum(float(p) * w for p, w in zip(precision, weights)),
        recall=sum(float(r) * w for r, w in zip(recall, weights)),
        f_score=sum(float(v) * w for v, w in zip(f, weights)),
        averaging=averaging,
        per_class_precision=precision.tolist(),
        per_class_recall=recall.tolist(),
        per_class_f=f.tolist(),
        support=true_count.astype(int).tolist(),
    )


def evaluate(model, X, Y, averaging="macro"):
    """Score a trained classifier (anything with ``predict`` and
    ``n_classes``) on labeled data."""
    Y = np.asarray(Y, dtype=np.int64)
    if len(Y) == 0:
        raise RejectedInput("empty evaluation set")
    y_pred = model.predict(X)
    return metrics_from_predictions(Y, y_pred, model.n_classes, averaging=averaging)
