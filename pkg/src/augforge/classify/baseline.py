"""Cross-validated logistic-regression baseline over feature-set variants.

Each variant is raw features, non-zero filtered (NZ), or NZ followed by
recursive elimination to a target count. All fitting (normalization,
masks, the classifier) happens on the training rows of each fold;
metrics come from the fold's test rows.
"""

from dataclasses import dataclass

import numpy as np

from .features import compose_masks, filter_nonzero_columns, rfe
from .folds import kfold_split
from .logistic import LogisticConfig, train_logistic_regression
from .metrics import evaluate
from ..data.dataset import apply_normalization, fit_normalization


@dataclass
class BaselineVariant:
    name: str
    nz: bool = False
    rfe_target: int = 0  # 0 disables elimination
    nz_threshold: float = 0.5


@dataclass
class VariantResult:
    name: str
    feature_counts: list
    fold_metrics: list
    mean_precision: float
    mean_recall: float
    mean_f: float
    representative_fold: int
    fold_masks: list = None  # per-fold retained-column index lists (None for raw)

    def to_dict(self):
        return {
            "name": self.name,
            "feature_counts": list(self.feature_counts),
            "fold_metrics": [m.to_dict() for m in self.fold_metrics],
            "mean_precision": self.mean_precision,
            "mean_recall": self.mean_recall,
            "mean_f": self.mean_f,
            "representative_fold": self.representative_fold,
            "fold_masks": self.fold_masks,
        }


def representative_fold(f_scores):
    """Index of the fold whose F-score sits closest to the mean
    (lowest index on ties)."""
    f_scores = np.asarray(f_scores, dtype=np.float64)
    return int(np.abs(f_scores - f_scores.mean()).argmin())


def prepare_fold_features(split, variant, lr_cfg=None):
    """Fit normalization + masks on the fold's train rows; returns the
    transformed (train, eval, test) matrices and the applied mask."""
    record = fit_normalization(split.X_train, method="minmax")
    x_train = apply_normalization(record, split.X_train)
    x_eval = apply_normalization(record, split.X_eval)
    x_test = apply_normalization(record, split.X_test)
    mask = None
    if variant.nz:
        mask = filter_nonzero_columns(split.X_train, variant.nz_threshold)
        x_train, x_eval, x_test = mask.apply(x_train), mask.apply(x_eval), mask.apply(x_test)
    if variant.rfe_target:
        inner = rfe(x_train, split.Y_train, variant.rfe_target, lr_cfg)
        x_train, x_eval, x_test = inner.apply(x_train), inner.apply(x_eval), inner.apply(x_test)
        mask = compose_masks(mask, inner) if mask is not None else inner
    return x_train, x_eval, x_test, mask, record


def run_table3_baseline(dataset, variants, k=5, sizes=(40, 8, 12), seed=0,
                        lr_cfg=None, averaging="macro"):
    lr_cfg = lr_cfg or LogisticConfig()
    plan = kfold_split(dataset, k=k, sizes=sizes, seed=seed)
    results = []
    for variant in variants:
        fold_metrics = []
        counts = []
        masks = []
        for split in plan.folds:
            x_train, _, x_test, mask, _ = prepare_fold_features(split, variant, lr_cfg)
            counts.append(x_train.shape[1] if mask is None else len(mask))
            masks.append(mask.to_dict() if mask is not None else None)
            model = train_logistic_regression(x_train, split.Y_train, lr_cfg)
            fold_metrics.append(evaluate(model, x_test, split.Y_test, averaging=averaging))
        fs = [m.f_score for m in fold_metrics]
        results.append(
            VariantResult(
                name=variant.name,
                feature_counts=counts,
                fold_metrics=fold_metrics,
                mean_precision=float(np.mean([m.precision for m in fold_metrics])),
                mean_recall=float(np.mean([m.recall for m in fold_metrics])),
                mean_f=float(np.mean(fs)),
                representative_fold=representative_fold(fs),
                fold_masks=masks,
            )
        )
    return results
