"""CSV ingestion and saving (single tabular interchange format).

CSV files carry a header row and '.' decimals. Saving writes the matrix
plus a JSON sidecar (class names, normalization record, provenance) next
to the CSV.
"""

import csv
import json
from pathlib import Path

import numpy as np

from ..errors import ConfigError, ParseError
from .dataset import Dataset, NormalizationRecord


def load_csv(path, label_column, delimiter=","):
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file") from None
        if label_column not in header:
            raise ConfigError(f"label column {label_column!r} not in header {header}")
        label_idx = header.index(label_column)
        feature_names = [h for i, h in enumerate(header) if i != label_idx]
        rows = []
        labels = []
        for row_no, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ParseError(
                    f"{path}: row {row_no} has {len(row)} cells, expected {len(header)}"
                )
            labels.append(row[label_idx])
            values = []
            for col_no, cell in enumerate(row):
                if col_no == label_idx:
                    continue
                try:
                    values.append(float(cell))
                except ValueError:
                    raise ParseError(
                        f"{path}: non-numeric cell at row {row_no},"
                        f" column {header[col_no]!r}: {cell!r}"
                    ) from None
            rows.append(values)
    if not rows:
        raise ParseError(f"{path}: no data rows")
    class_names = sorted(set(labels))
    ids = {name: i for i, name in enumerate(class_names)}
    return Dataset(
        X=np.array(rows, dtype=np.float64),
        Y=np.array([ids[l] for l in labels], dtype=np.int64),
        class_names=class_names,
        column_names=feature_names,
        provenance={"source": "csv", "path": str(path)},
    )


def save_csv(dataset, path, label_column="label", delimiter=","):
    """Write dataset as CSV plus a ``<path>.json`` sidecar; returns both paths."""
    path = Path(path)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, delimiter=delimiter)
        writer.writerow(list(dataset.column_names) + [label_column])
        for row, y in zip(dataset.X, dataset.Y):
            writer.writerow([repr(float(v)) for v in row] + [dataset.class_names[y]])
    sidecar = path.with_name(path.name + ".json")
    meta = {
        "class_names": list(dataset.class_names),
        "column_names": list(dataset.column_names),
        "normalization": dataset.normalization.to_dict() if dataset.normalization else None,
        "provenance": dataset.provenance,
    }
    with open(sidecar, "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path, sidecar


def load_sidecar(path):
    with open(path) as fh:
        meta = json.load(fh)
    if meta.get("normalization"):
        meta["normalization"] = NormalizationRecord.from_dict(meta["normalization"])
    return meta
