"""Experiment configuration: one JSON document, strictly validated.

Unknown keys are rejected with the full field path so typos surface
immediately, before any computation starts.
"""

import json
from dataclasses import dataclass, field

from ..classify import BaselineVariant, DnnConfig, LogisticConfig
from ..data import SynthConfig
from ..errors import ConfigError, InvalidHyperparameter
from ..genmodels import MODEL_KINDS, TrainConfig

_DATASET_KINDS = ("synth", "idx", "csv")
_SPLIT_KINDS = ("mnist1500", "kfold")


@dataclass
class FeatureSelectionConfig:
    nz_threshold: float = None  # None disables the non-zero filter
    rfe_target: int = 0


@dataclass
class DatasetConfig:
    kind: str = "synth"
    synth: SynthConfig = field(default_factory=SynthConfig)
    train_images: str = None
    train_labels: str = None
    test_images: str = None
    test_labels: str = None
    path: str = None
    label_column: str = "label"
    delimiter: str = ","


@dataclass
class SplitConfig:
    kind: str = "kfold"
    per_class: int = 150
    eval_fraction: float = 0.1
    k: int = 5
    train: int = 40
    eval: int = 8
    test: int = 12
    fold: object = "representative"  # index or "representative"


@dataclass
class BaselineConfig:
    variants: list = field(default_factory=list)
    lr: LogisticConfig = field(default_factory=LogisticConfig)


@dataclass
class ExperimentConfig:
    seed: int = 0
    output_dir: str = "augforge_out"
    dataset: DatasetConfig = field(default_factory=DatasetConfig)
    split: SplitConfig = field(default_factory=SplitConfig)
    features: FeatureSelectionConfig = field(default_factory=FeatureSelectionConfig)
    models: list = field(default_factory=lambda: ["vae"])
    iterations: int = 10
    gated: bool = False
    gen: TrainConfig = field(default_factory=TrainConfig)
    clf: DnnConfig = field(default_factory=DnnConfig)
    baseline: BaselineConfig = field(default_factory=BaselineConfig)
    echo: dict = field(default_factory=dict)  # raw document, echoed to reports


def _require_keys(doc, allowed, path):
    unknown = sorted(set(doc) - set(allowed))
    if unknown:
        raise ConfigError(f"{path}: unknown keys {unknown}; allowed: {sorted(allowed)}")


def _typed(doc, key, types, path, default=None, required=False):
    if key not in doc:
        if required:
            raise ConfigError(f"{path}.{key}: required")
        return default
    value = doc[key]
    allowed = types if isinstance(types, tuple) else (types,)
    ok = isinstance(value, allowed)
    if isinstance(value, bool) and bool not in allowed:
        ok = False  # bool passes isinstance(int); don't accept true for int fields
    if not ok:
        names = "/".join(t.__name__ for t in allowed)
        raise ConfigError(f"{path}.{key}: expected {names}, got {type(value).__name__}")
    return value


def _dataclass_section(doc, cls, path):
    """Fill a config dataclass from a JSON object, typed against the defaults."""
    base = cls()
    _require_keys(doc, base.__dict__.keys(), path)
    for key, value in doc.items():
        current = getattr(base, key)
        if isinstance(current, tuple):
            if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
                raise ConfigError(f"{path}.{key}: expected a list of integers")
            value = tuple(value)
        elif isinstance(current, bool):
            if not isinstance(value, bool):
                raise ConfigError(f"{path}.{key}: expected bool, got {type(value).__name__}")
        elif isinstance(current, int):
            if not isinstance(value, int) or isinstance(value, bool):
                raise ConfigError(f"{path}.{key}: expected int, got {type(value).__name__}")
        elif isinstance(current, float):
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"{path}.{key}: expected number, got {type(value).__name__}")
            value = float(value)
        elif isinstance(current, str):
            if not isinstance(value, str):
                raise ConfigError(f"{path}.{key}: expected string, got {type(value).__name__}")
        setattr(base, key, value)
    return base


def parse_dataset(doc, path="dataset"):
    _require_keys(
        doc,
        {
            "kind",
            "synth",
            "train_images",
            "train_labels",
            "test_images",
            "test_labels",
            "path",
            "label_column",
            "delimiter",
        },
        path,
    )
    kind = _typed(doc, "kind", str, path, required=True)
    if kind not in _DATASET_KINDS:
        raise ConfigError(f"{path}.kind: must be one of {_DATASET_KINDS}, got {kind!r}")
    out = DatasetConfig(kind=kind)
    if kind == "synth":
        out.synth = _dataclass_section(doc.get("synth", {}), SynthConfig, f"{path}.synth")
        out.synth.validate()
    elif kind == "idx":
        for key in ("train_images", "train_labels", "test_images", "test_labels"):
            setattr(out, key, _typed(doc, key, str, path, required=True))
    else:
        out.path = _typed(doc, "path", str, path, required=True)
        out.label_column = _typed(doc, "label_column", str, path, default="label")
        out.delimiter = _typed(doc, "delimiter", str, path, default=",")
    return out


def parse_split(doc, path="split"):
    _require_keys(
        doc, {"kind", "per_class", "eval_fraction", "k", "train", "eval", "test", "fold"}, path
    )
    kind = _typed(doc, "kind", str, path, required=True)
    if kind not in _SPLIT_KINDS:
        raise ConfigError(f"{path}.kind: must be one of {_SPLIT_KINDS}, got {kind!r}")
    out = SplitConfig(kind=kind)
    if kind == "mnist1500":
        out.per_class = _typed(doc, "per_class", int, path, default=150)
        out.eval_fraction = _typed(doc, "eval_fraction", (int, float), path, default=0.1)
    else:
        out.k = _typed(doc, "k", int, path, default=5)
        out.train = _typed(doc, "train", int, path, default=40)
        out.eval = _typed(doc, "eval", int, path, default=8)
        out.test = _typed(doc, "test", int, path, default=12)
        fold = doc.get("fold", "representative")
        if fold != "representative" and not isinstance(fold, int):
            raise ConfigError(f"{path}.fold: expected an index or 'representative', got {fold!r}")
        out.fold = fold
    return out


def parse_features(doc, path="features"):
    _require_keys(doc, {"nz_threshold", "rfe_target"}, path)
    out = FeatureSelectionConfig()
    if "nz_threshold" in doc:
        value = doc["nz_threshold"]
        if not isinstance(value, (int, float)) or not 0 <= value < 1:
            raise ConfigError(f"{path}.nz_threshold: expected a fraction in [0,1), got {value!r}")
        out.nz_threshold = float(value)
    out.rfe_target = _typed(doc, "rfe_target", int, path, default=0)
    if out.rfe_target < 0:
        raise ConfigError(f"{path}.rfe_target: must be >= 0")
    return out


def parse_baseline(doc, path="baseline"):
    _require_keys(doc, {"variants", "lr"}, path)
    out = BaselineConfig()
    variants = doc.get("variants", [])
    if not isinstance(variants, list):
        raise ConfigError(f"{path}.variants: expected a list")
    for i, v in enumerate(variants):
        vpath = f"{path}.variants[{i}]"
        _require_keys(v, {"name", "nz", "rfe_target", "nz_threshold"}, vpath)
        out.variants.append(
            BaselineVariant(
                name=_typed(v, "name", str, vpath, required=True),
                nz=_typed(v, "nz", bool, vpath, default=False),
                rfe_target=_typed(v, "rfe_target", int, vpath, default=0),
                nz_threshold=_typed(v, "nz_threshold", (int, float), vpath, default=0.5),
            )
        )
    out.lr = _dataclass_section(doc.get("lr", {}), LogisticConfig, f"{path}.lr")
    return out


def parse_config(doc):
    _require_keys(
        doc,
        {
            "seed",
            "output_dir",
            "dataset",
            "split",
            "features",
            "models",
            "iterations",
            "gated",
            "gen",
            "clf",
            "baseline",
        },
        "config",
    )
    cfg = ExperimentConfig(echo=doc)
    cfg.seed = _typed(doc, "seed", int, "config", default=0)
    cfg.output_dir = _typed(doc, "output_dir", str, "config", default="augforge_out")
    cfg.dataset = parse_dataset(doc.get("dataset", {"kind": "synth"}))
    cfg.split = parse_split(doc.get("split", {"kind": "kfold"}))
    cfg.features = parse_features(doc.get("features", {}))
    models = doc.get("models", ["vae"])
    if not isinstance(models, list) or not models:
        raise ConfigError("config.models: expected a non-empty list")
    for m in models:
        if m not in MODEL_KINDS:
            raise ConfigError(f"config.models: unknown model kind {m!r}; expected {MODEL_KINDS}")
    cfg.models = models
    cfg.iterations = _typed(doc, "iterations", int, "config", default=10)
    if cfg.iterations < 1:
        raise ConfigError("config.iterations: must be >= 1")
    cfg.gated = _typed(doc, "gated", bool, "config", default=False)
    cfg.gen = _dataclass_section(doc.get("gen", {}), TrainConfig, "config.gen")
    try:
        cfg.gen.validate()
    except InvalidHyperparameter as err:
        raise ConfigError(f"config.gen: {err}") from None
    cfg.clf = _dataclass_section(doc.get("clf", {}), DnnConfig, "config.clf")
    cfg.baseline = parse_baseline(doc.get("baseline", {}))
    return cfg


def load_config(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as err:
        raise ConfigError(f"{path}: invalid JSON: {err}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return parse_config(doc)
