"""Conditional GAN: noise + one-hot label in, features out.

The discriminator scores (features, one-hot label) pairs with a single
sigmoid authenticity output (1 real, 0 fake); generator and
discriminator alternate Adam updates within each batch. Since there is
no encoder, synthetic samples come from a seeded noise draw conditioned
on the source row's label, one per row.
"""

import numpy as np

from ..errors import RejectedInput, TrainingFailure
from ..nncore import Adam, Dense, Network, Sigmoid, binary_cross_entropy
from .common import check_labels, check_unit_features, hidden_stack
from .config import TrainConfig


class CganModel:
    kind = "cgan"

    def __init__(self, cfg, feature_dim, n_classes, rng):
        self.cfg = cfg
        self.feature_dim = feature_dim
        self.n_classes = n_classes
        self.noise_dim = cfg.noise_dim
        gen_layers, gen_out = hidden_stack(cfg.noise_dim + n_classes, cfg.gen_hidden, cfg, rng)
        gen_layers += [Dense(gen_out, feature_dim, rng), Sigmoid()]
        self.generator = Network(gen_layers)
        disc_layers, disc_out = hidden_stack(feature_dim + n_classes, cfg.disc_hidden, cfg, rng)
        disc_layers += [Dense(disc_out, 1, rng), Sigmoid()]
        self.discriminator = Network(disc_layers)
        self.gen_loss_history = []
        self.disc_loss_history = []
        self.holdout_accuracy = None

    def _onehot(self, labels):
        labels = np.asarray(labels, dtype=np.int64)
        if labels.size and (labels.min() < 0 or labels.max() >= self.n_classes):
            raise RejectedInput(
                f"labels must be in [0, {self.n_classes}), got {np.unique(labels).tolist()}"
            )
        return np.eye(self.n_classes)[labels]

    def generate(self, labels, rng):
        """One generated row per label, conditioned by one-hot concatenation."""
        onehot = self._onehot(labels)
        n = onehot.shape[0]
        if n == 0:
            return np.zeros((0, self.feature_dim))
        noise = rng.standard_normal((n, self.noise_dim))
        return self.generator.forward(np.concatenate([noise, onehot], axis=1), training=False)

    def discriminate(self, X, labels):
        return self.discriminator.forward(
            np.concatenate([X, self._onehot(labels)], axis=1), training=False
        )

    def produce_synthetic(self, X, Y, rng=None):
        rng = rng or np.random.default_rng(self.cfg.seed)
        return self.generate(Y, rng)


def cgan_generate(model, labels, rng):
    return model.generate(labels, rng)


def train_cgan(X, Y, cfg=None):
    cfg = cfg or TrainConfig()
    cfg.validate()
    X = check_unit_features(X)
    Y, k = check_labels(Y)
    rng = np.random.default_rng(cfg.seed)
    model = CganModel(cfg, X.shape[1], k, rng)
    gen_opt = Adam(model.generator.params(), learning_rate=cfg.learning_rate)
    disc_opt = Adam(model.discriminator.params(), learning_rate=cfg.disc_learning_rate)
    onehot = np.eye(k)[Y]
    n = X.shape[0]
    batch = cfg.effective_batch(n)

    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(n)
        d_sum, g_sum, rows = 0.0, 0.0, 0
        for start in range(0, n, batch):
            ids = order[start : start + batch]
            if len(ids) < 2:
                continue
            xb, yb = X[ids], onehot[ids]
            b = len(ids)

            # discriminator sees a joint real+fake batch
            noise = rng.standard_normal((b, cfg.noise_dim))
            fake = model.generator.forward(np.concatenate([noise, yb], axis=1), training=True)
            d_in = np.concatenate(
                [np.concatenate([xb, yb], axis=1), np.concatenate([fake, yb], axis=1)]
            )
            d_target = np.concatenate([np.ones((b, 1)), np.zeros((b, 1))])
            d_out = model.discriminator.forward(d_in, training=True)
            d_loss, d_grad = binary_cross_entropy(d_out, d_target)
            if not np.isfinite(d_loss):
                raise TrainingFailure(f"cgan disc loss non-finite at epoch {epoch}", epoch=epoch)
            model.discriminator.backward(d_grad)
            disc_opt.step(model.discriminator.grads())

            # generator tries to flip fresh fakes to "real"
            noise = rng.standard_normal((b, cfg.noise_dim))
            fake = model.generator.forward(np.concatenate([noise, yb], axis=1), training=True)
            d_out = model.discriminator.forward(np.concatenate([fake, yb], axis=1), training=True)
            g_loss, g_grad = binary_cross_entropy(d_out, np.ones((b, 1)))
            if not np.isfinite(g_loss):
                raise TrainingFailure(f"cgan gen loss non-finite at epoch {epoch}", epoch=epoch)
            input_grad = model.discriminator.backward(g_grad)
            model.generator.backward(input_grad[:, : model.feature_dim])
            gen_opt.step(model.generator.grads())

            d_sum += d_loss * b
            g_sum += g_loss * b
            rows += b
        model.disc_loss_history.append(d_sum / rows)
        model.gen_loss_history.append(g_sum / rows)

    # non-collapse smoke check on a held-out real/fake batch
    m = min(128, n)
    ids = rng.choice(n, size=m, replace=False)
    real_scores = model.discriminate(X[ids], Y[ids])
    fake_scores = model.discriminate(model.generate(Y[ids], rng), Y[ids])
    model.holdout_accuracy = float(
        ((real_scores > 0.5).sum() + (fake_scores < 0.5).sum()) / (2 * m)
    )
    return model
