"""Analytic gradients vs central finite differences on small random shapes."""

import numpy as np
import pytest

from augforge.nncore import (
    BatchNorm,
    Dense,
    Dropout,
    LeakyReLU,
    Network,
    Sigmoid,
    Softmax,
    binary_cross_entropy,
    categorical_cross_entropy,
    mean_squared_error,
)

from gradtools import assert_grads_close, numeric_grads


def build_net(kind, in_dim, hidden, out_dim, seed):
    r = np.random.default_rng(seed)
    if kind == "dense_mse":
        layers = [Dense(in_dim, out_dim, r)]
        loss = mean_squared_error
    elif kind == "mlp_mse":
        layers = [Dense(in_dim, hidden, r), LeakyReLU(0.2), Dense(hidden, out_dim, r)]
        loss = mean_squared_error
    elif kind == "bn_sigmoid_bce":
        layers = [
            Dense(in_dim, hidden, r),
            BatchNorm(hidden),
            LeakyReLU(0.2),
            Dense(hidden, out_dim, r),
            Sigmoid(),
        ]
        loss = binary_cross_entropy
    elif kind == "bn_softmax_cce":
        layers = [
            Dense(in_dim, hidden, r),
            BatchNorm(hidden),
            LeakyReLU(0.2),
            Dense(hidden, out_dim, r),
            Softmax(),
        ]
        loss = categorical_cross_entropy
    elif kind == "dropout_mse":
        layers = [
            Dense(in_dim, hidden, r),
            Dropout(0.4, np.random.default_rng(0)),
            Dense(hidden, out_dim, r),
        ]
        loss = mean_squared_error
    else:
        raise AssertionError(kind)
    return Network(layers), loss


def make_target(kind, batch, out_dim, r):
    if kind in ("dense_mse", "mlp_mse", "dropout_mse"):
        return r.normal(size=(batch, out_dim))
    if kind == "bn_sigmoid_bce":
        return r.integers(0, 2, size=(batch, out_dim)).astype(float)
    return np.eye(out_dim)[r.integers(0, out_dim, size=batch)]


KINK_MARGIN = 1e-3  # perturbations move pre-activations by <= ~1e-4


def _squarely_differentiable(net, x, dropouts):
    """False when some leaky-ReLU input sits close enough to its kink (or a
    sigmoid close enough to saturation) for central differences to straddle
    the derivative switch."""
    for i, d in enumerate(dropouts):
        d.rng = np.random.default_rng(1000 + i)
    z = x
    for layer in net.layers:
        if isinstance(layer, LeakyReLU) and np.abs(z).min() < KINK_MARGIN:
            return False
        z = layer.forward(z, training=True)
        if isinstance(layer, Sigmoid) and np.minimum(z, 1.0 - z).min() < 1e-6:
            return False
    return True


def run_check(kind, seed):
    r = np.random.default_rng(seed)
    batch = int(r.integers(2, 5))
    in_dim = int(r.integers(2, 8))
    hidden = int(r.integers(2, 8))
    out_dim = int(r.integers(2, 8))
    net, loss = build_net(kind, in_dim, hidden, out_dim, seed)
    dropouts = [l for l in net.layers if isinstance(l, Dropout)]

    x = r.normal(size=(batch, in_dim))
    for attempt in range(50):
        if _squarely_differentiable(net, x, dropouts):
            break
        x = np.random.default_rng([seed, attempt]).normal(size=(batch, in_dim))
    else:
        raise AssertionError(f"{kind} seed {seed}: no kink-free input found")
    target = make_target(kind, batch, out_dim, r)

    def loss_value():
        for i, d in enumerate(dropouts):  # identical mask on every replay
            d.rng = np.random.default_rng(1000 + i)
        out = net.forward(x, training=True)
        return loss(out, target)[0]

    base = loss_value()
    assert np.isfinite(base)
    # analytic pass under the same pinned dropout masks
    for i, d in enumerate(dropouts):
        d.rng = np.random.default_rng(1000 + i)
    out = net.forward(x, training=True)
    _, grad = loss(out, target)
    dx = net.backward(grad)
    analytic = [a.copy() for a in net.grads()] + [dx]
    numeric = numeric_grads(loss_value, net.params() + [x])
    assert_grads_close(analytic, numeric, label=kind)


KINDS = ["dense_mse", "mlp_mse", "bn_sigmoid_bce", "bn_softmax_cce", "dropout_mse"]


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_gradcheck(kind, seed):
    run_check(kind, seed)


def test_reparameterization_gradients():
    """Loss through z = mu + exp(log_var/2) * eps differentiates correctly
    w.r.t. the dense heads that produce mu and log_var, holding eps fixed."""
    r = np.random.default_rng(3)
    body = Dense(3, 5, r)
    mu_head = Dense(5, 2, r)
    logvar_head = Dense(5, 2, r)
    decoder = Network([Dense(2, 4, r), Sigmoid()])
    x = r.normal(size=(4, 3))
    target = r.random(size=(4, 4))
    eps = r.normal(size=(4, 2))

    def loss_value():
        h = body.forward(x)
        mu = mu_head.forward(h)
        log_var = logvar_head.forward(h)
        z = mu + np.exp(0.5 * log_var) * eps
        out = decoder.forward(z)
        return binary_cross_entropy(out, target)[0]

    h = body.forward(x)
    mu = mu_head.forward(h)
    log_var = logvar_head.forward(h)
    z = mu + np.exp(0.5 * log_var) * eps
    out = decoder.forward(z)
    _, grad = binary_cross_entropy(out, target)
    dz = decoder.backward(grad)
    dmu = dz
    dlog_var = dz * eps * 0.5 * np.exp(0.5 * log_var)
    dh = mu_head.backward(dmu) + logvar_head.backward(dlog_var)
    body.backward(dh)

    params = body.params + mu_head.params + logvar_head.params + decoder.params()
    analytic = [g.copy() for g in body.grads + mu_head.grads + logvar_head.grads + decoder.grads()]
    numeric = numeric_grads(loss_value, params)
    assert_grads_close(analytic, numeric, label="reparameterization")
