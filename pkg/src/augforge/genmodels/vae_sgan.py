"""VAE with a semi-supervised adversarial discriminator.

The encoder/decoder pair matches the plain VAE. A softmax discriminator
over K+1 classes (K real classes plus a "fake" class) is trained to give
real samples their true class and decoded samples the fake class; the
decoder gets an extra adversarial term pushing its reconstructions to be
classified as the source sample's true class. Decoder gradients combine
both objectives; the encoder trains on the VAE objective alone.
"""

import numpy as np

from ..errors import TrainingFailure
from ..nncore import Adam, Dense, Network, Softmax, categorical_cross_entropy, loss_fn
from .common import check_labels, check_unit_features, hidden_stack
from .config import TrainConfig
from .vae import VaeModel, kl_divergence


class VaeSganModel(VaeModel):
    kind = "vae_sgan"

    def __init__(self, cfg, feature_dim, n_classes, rng):
        super().__init__(cfg, feature_dim, rng)
        self.n_classes = n_classes
        self.fake_class = n_classes  # index K in the K+1 softmax
        disc_layers, disc_out = hidden_stack(feature_dim, cfg.disc_hidden, cfg, rng)
        disc_layers += [Dense(disc_out, n_classes + 1, rng), Softmax()]
        self.discriminator = Network(disc_layers)
        self.disc_loss_history = []
        self.adv_loss_history = []

    def discriminate(self, X):
        return self.discriminator.forward(X, training=False)


def train_vae_sgan(X, Y, cfg=None):
    cfg = cfg or TrainConfig()
    cfg.validate()
    X = check_unit_features(X)
    Y, k = check_labels(Y)
    rng = np.random.default_rng(cfg.seed)
    model = VaeSganModel(cfg, X.shape[1], k, rng)
    vae_opt = Adam(model.params(), learning_rate=cfg.learning_rate)
    disc_opt = Adam(model.discriminator.params(), learning_rate=cfg.disc_learning_rate)
    recon_loss = loss_fn(cfg.recon_loss)

    wide = np.eye(k + 1)
    true_onehot = wide[Y]  # true class in K+1 space
    fake_onehot = wide[k]
    n = X.shape[0]
    batch = cfg.effective_batch(n)

    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(n)
        vae_sum, disc_sum, adv_sum, rows = 0.0, 0.0, 0.0, 0
        for start in range(0, n, batch):
            ids = order[start : start + batch]
            if len(ids) < 2:
                continue
            xb = X[ids]
            b = len(ids)

            h = model.encoder_body.forward(xb, training=True)
            mu = model.mu_head.forward(h, training=True)
            log_var = model.logvar_head.forward(h, training=True)
            eps = rng.standard_normal(mu.shape)
            z = mu + np.exp(0.5 * log_var) * eps
            xr = model.decoder.forward(z, training=True)
            rec, g_rec = recon_loss(xr, xb)
            kl = kl_divergence(mu, log_var)
            vae_total = rec + cfg.kl_weight * kl
            if not np.isfinite(vae_total):
                raise TrainingFailure(f"vae-sgan loss non-finite at epoch {epoch}", epoch=epoch)

            # discriminator: real rows -> true class, decoded rows -> fake class
            d_in = np.concatenate([xb, xr])
            d_target = np.concatenate([true_onehot[ids], np.tile(fake_onehot, (b, 1))])
            d_out = model.discriminator.forward(d_in, training=True)
            d_loss, d_grad = categorical_cross_entropy(d_out, d_target)
            if not np.isfinite(d_loss):
                raise TrainingFailure(f"vae-sgan disc loss non-finite at epoch {epoch}", epoch=epoch)
            model.discriminator.backward(d_grad)
            disc_opt.step(model.discriminator.grads())

            # adversarial term: reconstructions should read as the true class
            a_out = model.discriminator.forward(xr, training=True)
            adv_loss, a_grad = categorical_cross_entropy(a_out, true_onehot[ids])
            gx_adv = model.discriminator.backward(a_grad)  # disc grads discarded

            # decoder combines both objectives; encoder sees only the VAE part
            model.decoder.backward(cfg.adv_weight * gx_adv)
            adv_decoder_grads = [g.copy() for g in model.decoder.grads()]
            dz = model.decoder.backward(g_rec)
            for g, adv_g in zip(model.decoder.grads(), adv_decoder_grads):
                g += adv_g
            dmu = dz + cfg.kl_weight * mu / b
            dlog_var = dz * eps * 0.5 * np.exp(0.5 * log_var) + cfg.kl_weight * 0.5 * (
                np.exp(log_var) - 1.0
            ) / b
            dh = model.mu_head.backward(dmu) + model.logvar_head.backward(dlog_var)
            model.encoder_body.backward(dh)
            vae_opt.step(model.grads())

            vae_sum += vae_total * b
            disc_sum += d_loss * b
            adv_sum += adv_loss * b
            rows += b
        model.loss_history.append(vae_sum / rows)
        model.disc_loss_history.append(disc_sum / rows)
        model.adv_loss_history.append(adv_sum / rows)
    return model
