"""Core data containers and feature normalization.

A dataset is a float64 sample-by-feature matrix with dense integer class
ids. Normalization is record-based: fit a record on a stated subset of
rows, then apply (or invert) it anywhere, so fold pipelines can prove
they fit on training rows only.
"""

from dataclasses import dataclass, field

import numpy as np

from ..errors import RejectedInput


@dataclass
class Dataset:
    X: np.ndarray
    Y: np.ndarray
    class_names: list
    column_names: list
    normalization: "NormalizationRecord | None" = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=np.float64)
        self.Y = np.asarray(self.Y, dtype=np.int64)
        if self.X.ndim != 2:
            raise RejectedInput(f"X must be 2-D, got shape {self.X.shape}")
        if len(self.Y) != self.X.shape[0]:
            raise RejectedInput(
                f"{self.X.shape[0]} rows but {len(self.Y)} labels"
            )
        if len(self.Y) and (self.Y.min() < 0 or self.Y.max() >= len(self.class_names)):
            raise RejectedInput("class ids must be dense in [0, n_classes)")
        if len(self.column_names) != self.X.shape[1]:
            raise RejectedInput(
                f"{self.X.shape[1]} columns but {len(self.column_names)} column names"
            )

    @property
    def n_samples(self):
        return self.X.shape[0]

    @property
    def n_features(self):
        return self.X.shape[1]

    @property
    def n_classes(self):
        return len(self.class_names)


@dataclass
class Split:
    """Fixed train/eval/test partition of one dataset."""

    X_train: np.ndarray
    Y_train: np.ndarray
    X_eval: np.ndarray
    Y_eval: np.ndarray
    X_test: np.ndarray
    Y_test: np.ndarray

    def __post_init__(self):
        for name in ("X_train", "X_eval", "X_test"):
            setattr(self, name, np.asarray(getattr(self, name), dtype=np.float64))
        for name in ("Y_train", "Y_eval", "Y_test"):
            setattr(self, name, np.asarray(getattr(self, name), dtype=np.int64))
        cols = {self.X_train.shape[1], self.X_eval.shape[1], self.X_test.shape[1]}
        if len(cols) != 1:
            raise RejectedInput(f"inconsistent feature counts across partitions: {cols}")
        train_classes = set(self.Y_train.tolist())
        for part, y in (("eval", self.Y_eval), ("test", self.Y_test)):
            missing = set(y.tolist()) - train_classes
            if missing:
                raise RejectedInput(f"{part} set contains classes absent from train: {missing}")

    @property
    def n_classes(self):
        return int(self.Y_train.max()) + 1

    @property
    def n_features(self):
        return self.X_train.shape[1]


@dataclass
class NormalizationRecord:
    """Per-column affine transform: normalized = (x - offset) / scale.

    ``minmax`` uses offset=min, scale=max-min and clamps applied values
    to [0, 1]; ``zscore`` uses offset=mean, scale=std with no clamping.
    Constant columns get scale 1 and are flagged; they normalize to 0.
    """

    method: str
    offset: np.ndarray
    scale: np.ndarray
    constant_columns: list
    fit_ids: list

    def to_dict(self):
        return {
            "method": self.method,
            "offset": self.offset.tolist(),
            "scale": self.scale.tolist(),
            "constant_columns": list(self.constant_columns),
            "fit_ids": list(self.fit_ids),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            method=d["method"],
            offset=np.asarray(d["offset"], dtype=np.float64),
            scale=np.asarray(d["scale"], dtype=np.float64),
            constant_columns=list(d["constant_columns"]),
            fit_ids=list(d["fit_ids"]),
        )


def fit_normalization(X, method="minmax", fit_ids=None):
    X = np.asarray(X, dtype=np.float64)
    rows = X if fit_ids is None else X[np.asarray(fit_ids, dtype=np.int64)]
    if rows.shape[0] == 0:
        raise RejectedInput("normalization fit subset is empty")
    if method == "minmax":
        offset = rows.min(axis=0)
        scale = rows.max(axis=0) - offset
    elif method == "zscore":
        offset = rows.mean(axis=0)
        scale = rows.std(axis=0)
    else:
        raise RejectedInput(f"unknown normalization method {method!r}")
    constant = np.flatnonzero(scale == 0.0).tolist()
    scale = np.where(scale == 0.0, 1.0, scale)
    return NormalizationRecord(
        method=method,
        offset=offset,
        scale=scale,
        constant_columns=constant,
        fit_ids=[] if fit_ids is None else [int(i) for i in fit_ids],
    )


def apply_normalization(record, X):
    X = np.asarray(X, dtype=np.float64)
    out = (X - record.offset) / record.scale
    if record.method == "minmax":
        out = np.clip(out, 0.0, 1.0)
    return out


def invert_normalization(record, X):
    X = np.asarray(X, dtype=np.float64)
    return X * record.scale + record.offset


def normalize(dataset, method="minmax", fit_on=None):
    """Normalized copy of a dataset plus the record that produced it.

    ``fit_on`` is the list of row ids the statistics come from (all rows
    when omitted); applied values outside the fit range clamp to [0, 1]
    under minmax.
    """
    record = fit_normalization(dataset.X, method=method, fit_ids=fit_on)
    out = Dataset(
        X=apply_normalization(record, dataset.X),
        Y=dataset.Y.copy(),
        class_names=list(dataset.class_names),
        column_names=list(dataset.column_names),
        normalization=record,
        provenance=dict(dataset.provenance),
    )
    return out, record
