"""From a validated config to finished experiment artifacts."""

import json
import os
import platform
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from .. import __version__
from ..augment import run_augmentation, write_trace_csv
from ..classify import (
    BaselineVariant,
    evaluate,
    filter_nonzero_columns,
    kfold_split,
    rfe,
    run_table3_baseline,
    train_dnn,
    train_logistic_regression,
)
from ..data import Split, load_csv, load_idx, subset_mnist, synth_hallam
from ..data.dataset import apply_normalization, fit_normalization
from ..errors import ConfigError
from .plotting import render_line_chart


def build_dataset(dataset_cfg, seed):
    if dataset_cfg.kind == "synth":
        synth = replace(dataset_cfg.synth, seed=dataset_cfg.synth.seed or seed)
        return synth_hallam(synth), None
    if dataset_cfg.kind == "csv":
        return (
            load_csv(dataset_cfg.path, dataset_cfg.label_column, dataset_cfg.delimiter),
            None,
        )
    train = load_idx(dataset_cfg.train_images, dataset_cfg.train_labels)
    test = load_idx(dataset_cfg.test_images, dataset_cfg.test_labels)
    return train, test


def select_fold(plan, feature_cfg, lr_cfg, seed):
    """Pick the fold whose logistic-regression test F-score is closest to
    the fold mean, measured on the configured feature pipeline."""
    fs = []
    for split in plan.folds:
        working, _ = prepare_split(split, feature_cfg, lr_cfg=lr_cfg)
        model = train_logistic_regression(working.X_train, working.Y_train, lr_cfg)
        fs.append(evaluate(model, working.X_test, working.Y_test).f_score)
    fs = np.asarray(fs)
    return int(np.abs(fs - fs.mean()).argmin()), fs.tolist()


def prepare_split(split, feature_cfg, already_unit=False, lr_cfg=None):
    """Fit normalization and the optional non-zero/RFE masks on the train
    partition, apply everywhere. Returns the working split plus a record
    of what was fitted (normalization, mask index lists)."""
    info = {"normalization": None, "masks": []}
    if already_unit:
        x_train, x_eval, x_test = split.X_train, split.X_eval, split.X_test
    else:
        record = fit_normalization(split.X_train, method="minmax")
        info["normalization"] = record.to_dict()
        x_train = apply_normalization(record, split.X_train)
        x_eval = apply_normalization(record, split.X_eval)
        x_test = apply_normalization(record, split.X_test)
    if feature_cfg and feature_cfg.nz_threshold is not None:
        mask = filter_nonzero_columns(split.X_train, feature_cfg.nz_threshold)
        info["masks"].append(mask.to_dict())
        x_train, x_eval, x_test = mask.apply(x_train), mask.apply(x_eval), mask.apply(x_test)
    if feature_cfg and feature_cfg.rfe_target:
        mask = rfe(x_train, split.Y_train, feature_cfg.rfe_target, lr_cfg)
        info["masks"].append(mask.to_dict())
        x_train, x_eval, x_test = mask.apply(x_train), mask.apply(x_eval), mask.apply(x_test)
    working = Split(
        X_train=x_train,
        Y_train=split.Y_train,
        X_eval=x_eval,
        Y_eval=split.Y_eval,
        X_test=x_test,
        Y_test=split.Y_test,
    )
    return working, info


def build_split(cfg, dataset, test_dataset):
    if cfg.split.kind == "mnist1500":
        if test_dataset is None:
            raise ConfigError(
                "split.kind mnist1500 requires an idx dataset with test files"
            )
        split = subset_mnist(
            dataset,
            test_dataset,
            per_class=cfg.split.per_class,
            eval_fraction=cfg.split.eval_fraction,
            seed=cfg.seed,
        )
        working, pipeline_info = prepare_split(split, cfg.features, already_unit=True)
        return working, None, pipeline_info
    plan = kfold_split(
        dataset, k=cfg.split.k, sizes=(cfg.split.train, cfg.split.eval, cfg.split.test),
        seed=cfg.seed,
    )
    if cfg.split.fold == "representative":
        fold_index, fold_fs = select_fold(plan, cfg.features, cfg.baseline.lr, cfg.seed)
    else:
        fold_index, fold_fs = cfg.split.fold, None
        if not 0 <= fold_index < plan.k:
            raise ConfigError(f"split.fold: index {fold_index} out of range for k={plan.k}")
    working, pipeline_info = prepare_split(
        plan.folds[fold_index], cfg.features, lr_cfg=cfg.baseline.lr
    )
    return working, {"index": fold_index, "lr_fold_f": fold_fs}, pipeline_info


def unaugmented_baseline(split, clf_cfg, seed):
    cfg = replace(clf_cfg, seed=seed)
    model = train_dnn(
        split.X_train, split.Y_train, split.X_eval, split.Y_eval,
        n_classes=split.n_classes, cfg=cfg,
    )
    return (
        evaluate(model, split.X_eval, split.Y_eval).f_score,
        evaluate(model, split.X_test, split.Y_test).f_score,
    )


def _run_model_kind(job):
    """One augmentation run; module-level so process pools can pickle it."""
    kind, split, iterations, gen_cfg, clf_cfg, seed, gated = job
    return kind, run_augmentation(
        split, kind, iterations, gen_cfg=gen_cfg, clf_cfg=clf_cfg, seed=seed, gated=gated
    )


def run_experiment(cfg, out_dir, parallel=False):
    """Execute the configured augmentation runs; writes config echo, per-model
    traces, a combined report, and the F-score chart. Returns the report."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "config_echo.json", "w") as fh:
        json.dump(cfg.echo, fh, indent=2)
        fh.write("\n")

    started = time.time()
    dataset, test_dataset = build_dataset(cfg.dataset, cfg.seed)
    split, fold_info, pipeline_info = build_split(cfg, dataset, test_dataset)
    baseline_eval_f, baseline_test_f = unaugmented_baseline(split, cfg.clf, cfg.seed)

    report = {
        "config": cfg.echo,
        "seed": cfg.seed,
        "dataset_summary": {
            "n_samples": dataset.n_samples,
            "n_features": dataset.n_features,
            "n_classes": dataset.n_classes,
            "working_features": split.n_features,
        },
        "fold": fold_info,
        "feature_pipeline": pipeline_info,
        "baseline": {"dnn_eval_f": baseline_eval_f, "dnn_test_f": baseline_test_f},
        "models": {},
        "best_score_table": [],
    }
    jobs = [
        (kind, split, cfg.iterations, cfg.gen, cfg.clf, cfg.seed, cfg.gated)
        for kind in cfg.models
    ]
    if parallel and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=min(len(jobs), os.cpu_count() or 1)) as pool:
            outcomes = list(pool.map(_run_model_kind, jobs))
    else:
        outcomes = [_run_model_kind(job) for job in jobs]
    series = []
    for kind, result in outcomes:
        write_trace_csv(result, out_dir / f"trace_{kind}.csv")
        report["models"][kind] = result.to_dict()
        report["best_score_table"].append(
            {
                "model": kind,
                "best_eval_f": result.score_eval[0],
                "best_eval_iteration": result.score_eval[1],
                "best_test_f": result.score_test[0],
                "best_test_iteration": result.score_test[1],
                "synthetic_rows_at_best_eval": result.synthetic_rows_at(result.score_eval[1]),
                "synthetic_rows_at_best_test": result.synthetic_rows_at(result.score_test[1]),
            }
        )
        points = [(r.iteration, 100.0 * r.s_test) for r in result.iterations if r.accepted]
        series.append((kind, [p[0] for p in points], [p[1] for p in points]))

    render_line_chart(
        series,
        out_path=out_dir / "fscore_vs_reconstructions.svg",
        baseline=100.0 * baseline_test_f,
        x_max=cfg.iterations,
    )
    report["wall_clock_seconds"] = time.time() - started
    report["timestamp_utc"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    report["versions"] = {
        "augforge": __version__,
        "python": sys.version.split()[0],
        "numpy": np.__version__,
        "platform": platform.platform(),
    }
    with open(out_dir / "report.json", "w") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    return report


def run_baseline(cfg, out_dir):
    """Cross-validated LR table over the configured variants; writes CSV and
    JSON tables and returns (results, representative fold of last variant)."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "config_echo.json", "w") as fh:
        json.dump(cfg.echo, fh, indent=2)
        fh.write("\n")
    dataset, _ = build_dataset(cfg.dataset, cfg.seed)
    variants = cfg.baseline.variants or [
        BaselineVariant("raw"),
        BaselineVariant("nz", nz=True),
    ]
    results = run_table3_baseline(
        dataset,
        variants,
        k=cfg.split.k,
        sizes=(cfg.split.train, cfg.split.eval, cfg.split.test),
        seed=cfg.seed,
        lr_cfg=cfg.baseline.lr,
    )
    with open(out_dir / "baseline.json", "w") as fh:
        json.dump([r.to_dict() for r in results], fh, indent=2)
        fh.write("\n")
    lines = ["variant,features,mean_precision,mean_recall,mean_f,representative_fold"]
    for r in results:
        features = r.feature_counts[0] if len(set(r.feature_counts)) == 1 else "varies"
        lines.append(
            f"{r.name},{features},{r.mean_precision:.6f},{r.mean_recall:.6f},"
            f"{r.mean_f:.6f},{r.representative_fold}"
        )
        for i, m in enumerate(r.fold_metrics):
            lines.append(
                f"{r.name}[fold{i}],{r.feature_counts[i]},{m.precision:.6f},"
                f"{m.recall:.6f},{m.f_score:.6f},"
            )
    (out_dir / "baseline.csv").write_text("\n".join(lines) + "\n")
    return results
