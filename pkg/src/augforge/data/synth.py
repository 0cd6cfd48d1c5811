"""Deterministic synthetic stand-in for the four-class clinical feature matrix.

Real recordings are private, so experiments at this scale run against a
generated dataset with the same shape: 4 balanced classes, 324 columns by
default, of which a few carry class signal, most are noise, and a block
is majority-zero so the non-zero column filter has something to remove.

Construction (all draws from one PCG64 generator seeded by ``seed``):

1. class centroids: 4 orthonormal directions in informative space
   (QR of a Gaussian matrix), scaled by ``separation``;
2. informative columns: centroid of the row's class + N(0, sigma^2);
3. noise columns: N(0, 1), no class signal;
4. zero-heavy columns: exactly ceil(zero_fraction * N) zeros placed by a
   random permutation, the rest U(0.5, 1.5);
5. columns and rows are shuffled; column names keep the role visible.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError
from .dataset import Dataset

CLASS_NAMES = ["FMD", "HC", "MCI", "ND"]


@dataclass
class SynthConfig:
    samples_per_class: int = 15
    n_features: int = 324
    n_informative: int = 24
    separation: float = 2.0
    sigma: float = 1.0
    n_zero_heavy: int = 63
    zero_fraction: float = 0.8
    seed: int = 0

    def validate(self):
        if min(self.samples_per_class, self.n_features, self.n_informative) < 1:
            raise ConfigError("counts must be positive")
        if self.n_zero_heavy < 0:
            raise ConfigError("n_zero_heavy must be >= 0")
        if self.n_informative + self.n_zero_heavy > self.n_features:
            raise ConfigError(
                f"{self.n_informative} informative + {self.n_zero_heavy} zero-heavy"
                f" columns exceed {self.n_features} features"
            )
        if not 0.5 < self.zero_fraction <= 1.0:
            raise ConfigError(
                f"zero_fraction must be in (0.5, 1], got {self.zero_fraction}"
            )
        if self.separation < 0 or self.sigma <= 0:
            raise ConfigError("separation must be >= 0 and sigma > 0")
        if self.n_informative < len(CLASS_NAMES):
            raise ConfigError("need at least as many informative columns as classes")


def synth_hallam(cfg=None):
    cfg = cfg or SynthConfig()
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    k = len(CLASS_NAMES)
    n = cfg.samples_per_class * k
    n_noise = cfg.n_features - cfg.n_informative - cfg.n_zero_heavy

    q, _ = np.linalg.qr(rng.normal(size=(cfg.n_informative, k)))
    centroids = cfg.separation * q.T  # one row per class, pairwise equidistant

    y = np.repeat(np.arange(k), cfg.samples_per_class)
    informative = centroids[y] + rng.normal(scale=cfg.sigma, size=(n, cfg.n_informative))
    noise = rng.normal(size=(n, n_noise))

    zero_heavy = np.empty((n, cfg.n_zero_heavy))
    n_zeros = math.ceil(cfg.zero_fraction * n)
    for j in range(cfg.n_zero_heavy):
        col = rng.uniform(0.5, 1.5, size=n)
        col[rng.permutation(n)[:n_zeros]] = 0.0
        zero_heavy[:, j] = col

    X = np.concatenate([informative, noise, zero_heavy], axis=1)
    names = (
        [f"inf_{i:03d}" for i in range(cfg.n_informative)]
        + [f"noise_{i:03d}" for i in range(n_noise)]
        + [f"zero_{i:03d}" for i in range(cfg.n_zero_heavy)]
    )
    col_order = rng.permutation(cfg.n_features)
    row_order = rng.permutation(n)
    return Dataset(
        X=X[row_order][:, col_order],
        Y=y[row_order],
        class_names=list(CLASS_NAMES),
        column_names=[names[j] for j in col_order],
        provenance={"source": "synth_hallam", "config": cfg.__dict__.copy()},
    )
