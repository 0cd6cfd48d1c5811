"""Model persistence: one JSON document per trained model.

The file records the model kind, the config echo, layer shapes, and
flattened parameters as decimal strings produced by ``repr`` so float64
values round-trip exactly. Loaded models are meant for generation and
scoring, not continued training.
"""

import json

import numpy as np

from ..errors import ParseError
from ..nncore import BatchNorm, Dense, Dropout, LeakyReLU, Network, Sigmoid, Softmax
from .cgan import CganModel
from .config import TrainConfig
from .vae import VaeModel
from .vae_sgan import VaeSganModel


def _array_out(a):
    return [repr(float(v)) for v in np.asarray(a).ravel()]


def _array_in(values, shape):
    return np.array([float(v) for v in values], dtype=np.float64).reshape(shape)


def _layer_out(layer):
    if isinstance(layer, Dense):
        return {
            "type": "dense",
            "in": layer.in_dim,
            "out": layer.out_dim,
            "w": _array_out(layer.w),
            "b": _array_out(layer.b),
        }
    if isinstance(layer, BatchNorm):
        return {
            "type": "batchnorm",
            "dim": layer.dim,
            "momentum": layer.momentum,
            "eps": layer.eps,
            "gamma": _array_out(layer.gamma),
            "beta": _array_out(layer.beta),
            "running_mean": _array_out(layer.running_mean),
            "running_var": _array_out(layer.running_var),
        }
    if isinstance(layer, LeakyReLU):
        return {"type": "leaky_relu", "alpha": layer.alpha}
    if isinstance(layer, Sigmoid):
        return {"type": "sigmoid"}
    if isinstance(layer, Softmax):
        return {"type": "softmax"}
    if isinstance(layer, Dropout):
        return {"type": "dropout", "rate": layer.rate}
    raise ParseError(f"cannot serialize layer {type(layer).__name__}")


def _layer_in(spec, rng):
    t = spec["type"]
    if t == "dense":
        layer = Dense(spec["in"], spec["out"], rng)
        layer.w = _array_in(spec["w"], (spec["in"], spec["out"]))
        layer.b = _array_in(spec["b"], (spec["out"],))
        return layer
    if t == "batchnorm":
        layer = BatchNorm(spec["dim"], momentum=spec["momentum"], eps=spec["eps"])
        layer.gamma = _array_in(spec["gamma"], (spec["dim"],))
        layer.beta = _array_in(spec["beta"], (spec["dim"],))
        layer.running_mean = _array_in(spec["running_mean"], (spec["dim"],))
        layer.running_var = _array_in(spec["running_var"], (spec["dim"],))
        return layer
    if t == "leaky_relu":
        return LeakyReLU(spec["alpha"])
    if t == "sigmoid":
        return Sigmoid()
    if t == "softmax":
        return Softmax()
    if t == "dropout":
        return Dropout(spec["rate"], rng)
    raise ParseError(f"unknown layer type {t!r}")


def _network_out(net):
    return [_layer_out(l) for l in net.layers]


def _network_in(specs, rng):
    return Network([_layer_in(s, rng) for s in specs])


def save_model(model, path):
    doc = {
        "kind": model.kind,
        "config": model.cfg.to_dict(),
        "feature_dim": model.feature_dim,
        "seed": model.cfg.seed,
    }
    if model.kind == "vae":
        doc["components"] = {
            "encoder_body": _network_out(model.encoder_body),
            "mu_head": _layer_out(model.mu_head),
            "logvar_head": _layer_out(model.logvar_head),
            "decoder": _network_out(model.decoder),
        }
    elif model.kind == "cgan":
        doc["n_classes"] = model.n_classes
        doc["components"] = {
            "generator": _network_out(model.generator),
            "discriminator": _network_out(model.discriminator),
        }
    elif model.kind == "vae_sgan":
        doc["n_classes"] = model.n_classes
        doc["components"] = {
            "encoder_body": _network_out(model.encoder_body),
            "mu_head": _layer_out(model.mu_head),
            "logvar_head": _layer_out(model.logvar_head),
            "decoder": _network_out(model.decoder),
            "discriminator": _network_out(model.discriminator),
        }
    else:
        raise ParseError(f"cannot save model kind {model.kind!r}")
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")
    return path


def load_model(path):
    with open(path) as fh:
        doc = json.load(fh)
    kind = doc.get("kind")
    cfg = TrainConfig.from_dict(doc["config"])
    rng = np.random.default_rng(doc.get("seed", 0))
    comp = doc["components"]
    if kind == "vae":
        model = VaeModel(cfg, doc["feature_dim"], rng)
    elif kind == "cgan":
        model = CganModel(cfg, doc["feature_dim"], doc["n_classes"], rng)
        model.generator = _network_in(comp["generator"], rng)
        model.discriminator = _network_in(comp["discriminator"], rng)
        return model
    elif kind == "vae_sgan":
        model = VaeSganModel(cfg, doc["feature_dim"], doc["n_classes"], rng)
        model.discriminator = _network_in(comp["discriminator"], rng)
    else:
        raise ParseError(f"unknown model kind {kind!r} in {path}")
    model.encoder_body = _network_in(comp["encoder_body"], rng)
    model.mu_head = _layer_in(comp["mu_head"], rng)
    model.logvar_head = _layer_in(comp["logvar_head"], rng)
    model.decoder = _network_in(comp["decoder"], rng)
    return model
