"""Trace serialization: one CSV/JSON row per augmentation iteration."""

import csv
import json

from ..errors import ConfigError

TRACE_COLUMNS = ["iteration", "accepted", "S_eval", "S_test", "similarity", "train_pool_rows"]


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_trace_csv(result, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_COLUMNS)
        for r in result.iterations:
            writer.writerow(
                [
                    _cell(r.iteration),
                    _cell(r.accepted),
                    _cell(r.s_eval),
                    _cell(r.s_test),
                    _cell(r.similarity),
                    _cell(r.train_pool_rows),
                ]
            )
    return path


def read_trace_csv(path):
    """Rows as dicts with parsed types (None for blank cells)."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in TRACE_COLUMNS if c not in (reader.fieldnames or [])]
        if missing:
            raise ConfigError(f"{path}: missing columns {missing}")
        rows = []
        for raw in reader:
            rows.append(
                {
                    "iteration": int(raw["iteration"]),
                    "accepted": raw["accepted"] == "true",
                    "S_eval": float(raw["S_eval"]) if raw["S_eval"] else None,
                    "S_test": float(raw["S_test"]) if raw["S_test"] else None,
                    "similarity": float(raw["similarity"]) if raw["similarity"] else None,
                    "train_pool_rows": int(raw["train_pool_rows"]),
                }
            )
    return rows


def write_trace_json(result, path):
    with open(path, "w") as fh:
        json.dump(result.to_dict(), fh, indent=2)
        fh.write("\n")
    return path
