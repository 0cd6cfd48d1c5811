"""Dense-layer generative models: VAE, CGAN, and VAE-SGAN.

All three expose ``produce_synthetic(X, Y, rng)`` returning one synthetic
row per input row: the autoencoder variants decode the encoder mean of
each row, the CGAN generates from noise conditioned on each row's label.
"""

from .config import TrainConfig
from .vae import VaeModel, kl_divergence, reconstruct, train_vae
from .cgan import CganModel, cgan_generate, train_cgan
from .vae_sgan import VaeSganModel, train_vae_sgan
from .modelio import load_model, save_model

MODEL_KINDS = ("vae", "cgan", "vae_sgan")


def train_model(kind, X, Y, cfg=None):
    """Train the requested model kind on labeled data."""
    if kind == "vae":
        return train_vae(X, cfg)
    if kind == "cgan":
        return train_cgan(X, Y, cfg)
    if kind == "vae_sgan":
        return train_vae_sgan(X, Y, cfg)
    raise ValueError(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")


__all__ = [
    "MODEL_KINDS",
    "CganModel",
    "TrainConfig",
    "VaeModel",
    "VaeSganModel",
    "cgan_generate",
    "kl_divergence",
    "load_model",
    "reconstruct",
    "save_model",
    "train_cgan",
    "train_model",
    "train_vae",
    "train_vae_sgan",
]
