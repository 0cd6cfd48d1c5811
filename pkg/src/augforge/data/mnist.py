"""Stratified subset selection for the small-sample digit protocol."""

import numpy as np

from ..errors import ConfigError
from .dataset import Split


def subset_mnist(train, test, per_class=150, eval_fraction=0.1, seed=0):
    """Draw ``per_class`` samples per digit from ``train`` and split them
    stratified into train/eval by ``eval_fraction``; the full ``test``
    dataset rides along as the test partition.
    """
    rng = np.random.default_rng(seed)
    classes = np.arange(train.n_classes)
    eval_per_class = int(round(per_class * eval_fraction))
    if not 0 < eval_per_class < per_class:
        raise ConfigError(
            f"eval_fraction {eval_fraction} leaves no eval or no train rows"
        )
    train_ids = []
    eval_ids = []
    for c in classes:
        pool = np.flatnonzero(train.Y == c)
        if len(pool) < per_class:
            raise ConfigError(
                f"class {c} has only {len(pool)} samples, need {per_class}"
            )
        chosen = rng.choice(pool, size=per_class, replace=False)
        eval_ids.append(chosen[:eval_per_class])
        train_ids.append(chosen[eval_per_class:])
    train_ids = np.concatenate(train_ids)
    eval_ids = np.concatenate(eval_ids)
    rng.shuffle(train_ids)
    rng.shuffle(eval_ids)
    return Split(
        X_train=train.X[train_ids],
        Y_train=train.Y[train_ids],
        X_eval=train.X[eval_ids],
        Y_eval=train.Y[eval_ids],
        X_test=test.X.copy(),
        Y_test=test.Y.copy(),
    )
