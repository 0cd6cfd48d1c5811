"""Stratified k-fold plans with fixed train/eval/test sizes per fold."""

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError
from ..data import Split


@dataclass
class FoldPlan:
    folds: list
    test_ids: list  # per fold, original row ids of the test partition
    train_ids: list
    eval_ids: list
    k: int
    sizes: tuple
    seed: int


def kfold_split(dataset, k, sizes, seed=0):
    """Build ``k`` stratified folds of (train, eval, test) with the given
    sizes; the k test partitions tile the dataset exactly.
    """
    train_size, eval_size, test_size = sizes
    n = dataset.n_samples
    if k * test_size != n:
        raise ConfigError(f"k*test_size = {k * test_size} must equal dataset size {n}")
    if train_size + eval_size + test_size != n:
        raise ConfigError(f"sizes {sizes} must sum to dataset size {n}")

    counts = np.bincount(dataset.Y, minlength=dataset.n_classes)
    test_pc = {}
    eval_pc = {}
    for c, n_c in enumerate(counts):
        t = test_size * n_c / n
        e = eval_size * n_c / n
        if t != int(t) or e != int(e):
            raise ConfigError(
                f"sizes {sizes} cannot be stratified: class {c} would need"
                f" {t} test and {e} eval rows per fold"
            )
        test_pc[c], eval_pc[c] = int(t), int(e)

    rng = np.random.default_rng(seed)
    shuffled = {c: rng.permutation(np.flatnonzero(dataset.Y == c)) for c in range(dataset.n_classes)}

    folds, test_ids_all, train_ids_all, eval_ids_all = [], [], [], []
    for f in range(k):
        test_ids, eval_ids, train_ids = [], [], []
        for c, ids in shuffled.items():
            t = test_pc[c]
            block = ids[f * t : (f + 1) * t]
            rest = np.concatenate([ids[: f * t], ids[(f + 1) * t :]])
            test_ids.append(block)
            eval_ids.append(rest[: eval_pc[c]])
            train_ids.append(rest[eval_pc[c] :])
        test_ids = np.concatenate(test_ids)
        eval_ids = np.concatenate(eval_ids)
        train_ids = np.concatenate(train_ids)
        folds.append(
            Split(
                X_train=dataset.X[train_ids],
                Y_train=dataset.Y[train_ids],
                X_eval=dataset.X[eval_ids],
                Y_eval=dataset.Y[eval_ids],
                X_test=dataset.X[test_ids],
                Y_test=dataset.Y[test_ids],
            )
        )
        test_ids_all.append(test_ids.tolist())
        eval_ids_all.append(eval_ids.tolist())
        train_ids_all.append(train_ids.tolist())
    return FoldPlan(
        folds=folds,
        test_ids=test_ids_all,
        train_ids=train_ids_all,
        eval_ids=eval_ids_all,
        k=k,
        sizes=tuple(sizes),
        seed=seed,
    )
