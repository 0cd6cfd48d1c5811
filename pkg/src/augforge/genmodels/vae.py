"""Variational autoencoder with dense layers only.

Encoder body -> (mu, log_var) heads; latent samples z = mu +
exp(log_var/2) * eps feed a sigmoid-output decoder. The objective is
per-sample reconstruction loss (summed over features, cross-entropy by
default) plus the Gaussian KL term, averaged over the batch.

``reconstruct`` is deterministic: it decodes the encoder mean, no
sampling, so repeated calls agree bit for bit.
"""

import numpy as np

from ..errors import TrainingFailure
from ..nncore import Adam, Dense, Network, Sigmoid, loss_fn
from .common import check_unit_features, hidden_stack
from .config import TrainConfig


def kl_divergence(mu, log_var):
    """KL(N(mu, exp(log_var)) || N(0, 1)): -0.5 * sum(1 + log_var - mu^2
    - exp(log_var)), summed over latent dims, averaged over rows when 2-D."""
    mu = np.asarray(mu, dtype=np.float64)
    log_var = np.asarray(log_var, dtype=np.float64)
    per_element = -0.5 * (1.0 + log_var - mu * mu - np.exp(log_var))
    if per_element.ndim <= 1:
        return float(per_element.sum())
    return float(per_element.sum(axis=1).mean())


class VaeModel:
    kind = "vae"

    def __init__(self, cfg, feature_dim, rng):
        self.cfg = cfg
        self.feature_dim = feature_dim
        self.latent_dim = cfg.latent_dim
        enc_layers, enc_out = hidden_stack(feature_dim, cfg.enc_hidden, cfg, rng)
        self.encoder_body = Network(enc_layers)
        self.mu_head = Dense(enc_out, cfg.latent_dim, rng)
        self.logvar_head = Dense(enc_out, cfg.latent_dim, rng)
        dec_layers, dec_out = hidden_stack(cfg.latent_dim, cfg.dec_hidden, cfg, rng)
        dec_layers += [Dense(dec_out, feature_dim, rng), Sigmoid()]
        self.decoder = Network(dec_layers)
        self.loss_history = []

    def encode(self, x, training=False):
        h = self.encoder_body.forward(x, training=training)
        return self.mu_head.forward(h, training=training), self.logvar_head.forward(
            h, training=training
        )

    def decode(self, z, training=False):
        return self.decoder.forward(z, training=training)

    def reconstruct(self, x):
        mu, _ = self.encode(x, training=False)
        return self.decode(mu, training=False)

    def sample_reconstruct(self, x, rng):
        """Stochastic variant: decode a reparameterized latent sample."""
        mu, log_var = self.encode(x, training=False)
        z = mu + np.exp(0.5 * log_var) * rng.standard_normal(mu.shape)
        return self.decode(z, training=False)

    def produce_synthetic(self, X, Y=None, rng=None):
        return self.reconstruct(X)

    def params(self):
        return (
            self.encoder_body.params()
            + self.mu_head.params
            + self.logvar_head.params
            + self.decoder.params()
        )

    def grads(self):
        return (
            self.encoder_body.grads()
            + self.mu_head.grads
            + self.logvar_head.grads
            + self.decoder.grads()
        )


def reconstruct(model, x):
    """Deterministic encode-then-decode with the model's encoder mean."""
    return model.reconstruct(np.asarray(x, dtype=np.float64))


def _vae_batch_step(model, xb, rng, recon_loss, cfg):
    """Forward + backward for one batch; returns (total loss, grads filled)."""
    h = model.encoder_body.forward(xb, training=True)
    mu = model.mu_head.forward(h, training=True)
    log_var = model.logvar_head.forward(h, training=True)
    eps = rng.standard_normal(mu.shape)
    z = mu + np.exp(0.5 * log_var) * eps
    xr = model.decoder.forward(z, training=True)
    rec, g_rec = recon_loss(xr, xb)
    kl = kl_divergence(mu, log_var)
    total = rec + cfg.kl_weight * kl

    b = xb.shape[0]
    dz = model.decoder.backward(g_rec)
    dmu = dz + cfg.kl_weight * mu / b
    dlog_var = dz * eps * 0.5 * np.exp(0.5 * log_var) + cfg.kl_weight * 0.5 * (
        np.exp(log_var) - 1.0
    ) / b
    dh = model.mu_head.backward(dmu) + model.logvar_head.backward(dlog_var)
    model.encoder_body.backward(dh)
    return total


def train_vae(X, cfg=None):
    cfg = cfg or TrainConfig()
    cfg.validate()
    X = check_unit_features(X)
    rng = np.random.default_rng(cfg.seed)
    model = VaeModel(cfg, X.shape[1], rng)
    opt = Adam(model.params(), learning_rate=cfg.learning_rate)
    recon_loss = loss_fn(cfg.recon_loss)
    n = X.shape[0]
    batch = cfg.effective_batch(n)

    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(n)
        epoch_loss = 0.0
        rows = 0
        for start in range(0, n, batch):
            ids = order[start : start + batch]
            if len(ids) < 2:
                continue
            total = _vae_batch_step(model, X[ids], rng, recon_loss, cfg)
            if not np.isfinite(total):
                raise TrainingFailure(f"vae loss non-finite at epoch {epoch}", epoch=epoch)
            opt.step(model.grads())
            epoch_loss += total * len(ids)
            rows += len(ids)
        model.loss_history.append(epoch_loss / rows)
    return model
