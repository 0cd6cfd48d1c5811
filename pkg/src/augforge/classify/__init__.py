"""Baseline and evaluator classifiers plus the cross-validation protocol."""

from .metrics import Metrics, confusion_matrix, evaluate, metrics_from_predictions
from .logistic import LogisticConfig, LogisticModel, train_logistic_regression
from .features import FeatureMask, compose_masks, filter_nonzero_columns, rfe
from .dnn import DnnClassifier, DnnConfig, train_dnn
from .folds import FoldPlan, kfold_split
from .baseline import BaselineVariant, VariantResult, run_table3_baseline

__all__ = [
    "BaselineVariant",
    "DnnClassifier",
    "DnnConfig",
    "FeatureMask",
    "FoldPlan",
    "LogisticConfig",
    "LogisticModel",
    "Metrics",
    "VariantResult",
    "compose_masks",
    "confusion_matrix",
    "evaluate",
    "filter_nonzero_columns",
    "kfold_split",
    "metrics_from_predictions",
    "rfe",
    "run_table3_baseline",
    "train_dnn",
    "train_logistic_regression",
]
