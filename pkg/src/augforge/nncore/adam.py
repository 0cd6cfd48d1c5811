"""Adam optimizer with bias correction."""

import numpy as np

from ..errors import InvalidHyperparameter, OptimizerDivergence, ShapeMismatch


class Adam:
    """Holds first/second moment estimates for a fixed list of parameter
    arrays and updates them in place on each ``step``."""

    def __init__(self, params, learning_rate=1e-3, beta1=0.9, beta2=0.999, epsilon=1e-8):
        if not (0.0 <= beta1 < 1.0 and 0.0 <= beta2 < 1.0):
            raise InvalidHyperparameter(f"betas must be in [0,1), got {beta1}, {beta2}")
        if learning_rate <= 0.0:
            raise InvalidHyperparameter(f"learning rate must be positive, got {learning_rate}")
        self.params = list(params)
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self.m = [np.zeros_like(p) for p in self.params]
        self.v = [np.zeros_like(p) for p in self.params]
        self.step_count = 0

    def step(self, grads):
        if len(grads) != len(self.params):
            raise ShapeMismatch(
                f"expected {len(self.params)} gradient blocks, got {len(grads)}"
            )
        for i, (p, g) in enumerate(zip(self.params, grads)):
            if p.shape != g.shape:
                raise ShapeMismatch(
                    f"parameter block {i}: shape {p.shape} vs gradient {g.shape}"
                )
            if not np.isfinite(g).all():
                raise OptimizerDivergence(f"non-finite gradient in parameter block {i}")
        self.step_count += 1
        t = self.step_count
        bias1 = 1.0 - self.beta1 ** t
        bias2 = 1.0 - self.beta2 ** t
        for p, g, m, v in zip(self.params, grads, self.m, self.v):
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            p -= self.learning_rate * (m / bias1) / (np.sqrt(v / bias2) + self.epsilon)
