"""Training configuration shared by the three generative models."""

from dataclasses import dataclass

from ..errors import InvalidHyperparameter


@dataclass
class TrainConfig:
    epochs: int = 200
    batch_size: int = 32
    learning_rate: float = 1e-3
    disc_learning_rate: float = 5e-4
    latent_dim: int = 16
    noise_dim: int = 32
    enc_hidden: tuple = (128, 64)
    dec_hidden: tuple = (64, 128)
    gen_hidden: tuple = (128, 128)
    disc_hidden: tuple = (128, 64)
    dropout: float = 0.3
    leaky_alpha: float = 0.2
    recon_loss: str = "bce"
    kl_weight: float = 1.0
    adv_weight: float = 0.1
    seed: int = 0

    def validate(self):
        positives = {
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "learning_rate": self.learning_rate,
            "disc_learning_rate": self.disc_learning_rate,
            "latent_dim": self.latent_dim,
            "noise_dim": self.noise_dim,
        }
        for name, value in positives.items():
            if value <= 0:
                raise InvalidHyperparameter(f"{name} must be positive, got {value}")
        for name in ("enc_hidden", "dec_hidden", "gen_hidden", "disc_hidden"):
            widths = getattr(self, name)
            if not widths or any(w < 1 for w in widths):
                raise InvalidHyperparameter(f"{name} must be non-empty positive widths")
        if not 0.0 <= self.dropout < 1.0:
            raise InvalidHyperparameter(f"dropout must be in [0,1), got {self.dropout}")
        if self.recon_loss not in ("bce", "mse"):
            raise InvalidHyperparameter(f"recon_loss must be 'bce' or 'mse', got {self.recon_loss!r}")
        if self.kl_weight < 0 or self.adv_weight < 0:
            raise InvalidHyperparameter("loss weights must be >= 0")

    def effective_batch(self, n):
        """Full batch below 64 training rows, else the configured size."""
        return n if n < 64 else min(self.batch_size, n)

    def to_dict(self):
        d = dict(self.__dict__)
        for key in ("enc_hidden", "dec_hidden", "gen_hidden", "disc_hidden"):
            d[key] = list(d[key])
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        for key in ("enc_hidden", "dec_hidden", "gen_hidden", "disc_hidden"):
            if key in d:
                d[key] = tuple(d[key])
        return cls(**d)
