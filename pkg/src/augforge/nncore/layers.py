"""Layer implementations with explicit forward/backward passes.

Every layer follows the same protocol:

    y = layer.forward(x, training=...)   # caches what backward needs
    dx = layer.backward(dy)              # fills layer gradients, returns input grad

``params`` and ``grads`` return parallel lists of arrays (empty for
parameter-free layers). Gradients are gradients of the total loss, i.e.
any 1/batch factor lives in the loss function, not here.
"""

import numpy as np

from ..errors import DegenerateBatch, InvalidHyperparameter, ShapeMismatch, StateError


def glorot_uniform(fan_in, fan_out, rng):
    """Uniform Glorot init: U(-limit, limit) with limit = sqrt(6/(fan_in+fan_out))."""
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


class Dense:
    """Affine layer y = x @ w + b with weights [in x out] and bias [out]."""

    def __init__(self, in_dim, out_dim, rng):
        self.in_dim = in_dim
        self.out_dim = out_dim
        self.w = glorot_uniform(in_dim, out_dim, rng)
        self.b = np.zeros(out_dim)
        self.dw = np.zeros_like(self.w)
        self.db = np.zeros_like(self.b)
        self._x = None

    def forward(self, x, training=False):
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 2 or x.shape[1] != self.in_dim:
            raise ShapeMismatch(
                f"dense layer expects [batch x {self.in_dim}], got {x.shape}"
            )
        self._x = x
        return x @ self.w + self.b

    def backward(self, grad):
        if self._x is None:
            raise StateError("dense backward called before forward")
        self.dw = self._x.T @ grad
        self.db = grad.sum(axis=0)
        return grad @ self.w.T

    @property
    def params(self):
        return [self.w, self.b]

    @property
    def grads(self):
        return [self.dw, self.db]


class BatchNorm:
    """Batch normalization over feature columns.

    Train mode normalizes by the batch mean and population variance and
    updates running statistics with momentum; infer mode normalizes by
    the running statistics.
    """

    def __init__(self, dim, momentum=0.9, eps=1e-5):
        if not 0.0 < momentum < 1.0:
            raise InvalidHyperparameter(f"batch-norm momentum must be in (0,1), got {momentum}")
        if eps <= 0.0:
            raise InvalidHyperparameter(f"batch-norm eps must be positive, got {eps}")
        self.dim = dim
        self.momentum = momentum
        self.eps = eps
        self.gamma = np.ones(dim)
        self.beta = np.zeros(dim)
        self.running_mean = np.zeros(dim)
        self.running_var = np.ones(dim)
        self.dgamma = np.zeros_like(self.gamma)
        self.dbeta = np.zeros_like(self.beta)
        self._cache = None

    def forward(self, x, training=False):
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 2 or x.shape[1] != self.dim:
            raise ShapeMismatch(f"batch-norm expects [batch x {self.dim}], got {x.shape}")
        if training:
            if x.shape[0] < 2:
                raise DegenerateBatch("batch norm needs batch size >= 2 in train mode")
            mean = x.mean(axis=0)
            var = x.var(axis=0)  # population variance
            self.running_mean = self.momentum * self.running_mean + (1.0 - self.momentum) * mean
            self.running_var = self.momentum * self.running_var + (1.0 - self.momentum) * var
            inv_std = 1.0 / np.sqrt(var + self.eps)
            xhat = (x - mean) * inv_std
            self._cache = (xhat, inv_std)
        else:
            inv_std = 1.0 / np.sqrt(self.running_var + self.eps)
            xhat = (x - self.running_mean) * inv_std
            self._cache = None
        return self.gamma * xhat + self.beta

    def backward(self, grad):
        if self._cache is None:
            raise StateError("batch-norm backward needs a preceding train-mode forward")
        xhat, inv_std = self._cache
        n = xhat.shape[0]
        self.dgamma = (grad * xhat).sum(axis=0)
        self.dbeta = grad.sum(axis=0)
        dxhat = grad * self.gamma
        # backprop through the batch statistics
        return (inv_std / n) * (
            n * dxhat - dxhat.sum(axis=0) - xhat * (dxhat * xhat).sum(axis=0)
        )

    @property
    def params(self):
        return [self.gamma, self.beta]

    @property
    def grads(self):
        return [self.dgamma, self.dbeta]


class LeakyReLU:
    def __init__(self, alpha=0.2):
        self.alpha = alpha
        self._mask = None

    def forward(self, x, training=False):
        x = np.asarray(x, dtype=np.float64)
        self._mask = x >= 0.0
        return np.where(self._mask, x, self.alpha * x)

    def backward(self, grad):
        if self._mask is None:
            raise StateError("activation backward called before forward")
        return np.where(self._mask, grad, self.alpha * grad)

    @property
    def params(self):
        return []

    @property
    def grads(self):
        return []


class Sigmoid:
    def __init__(self):
        self._y = None

    def forward(self, x, training=False):
        x = np.asarray(x, dtype=np.float64)
        out = np.empty_like(x)
        pos = x >= 0.0
        out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
        ex = np.exp(x[~pos])
        out[~pos] = ex / (1.0 + ex)
        # keep the open interval even where float64 saturates
        np.clip(out, np.finfo(np.float64).tiny, np.nextafter(1.0, 0.0), out=out)
        self._y = out
        return out

    def backward(self, grad):
        if self._y is None:
            raise StateError("activation backward called before forward")
        return grad * self._y * (1.0 - self._y)

    @property
    def params(self):
        return []

    @property
    def grads(self):
        return []


class Softmax:
    """Row-wise softmax; rows of the output sum to 1."""

    def __init__(self):
        self._y = None

    def forward(self, x, training=False):
        x = np.asarray(x, dtype=np.float64)
        shifted = x - x.max(axis=1, keepdims=True)
        ex = np.exp(shifted)
        self._y = ex / ex.sum(axis=1, keepdims=True)
        return self._y

    def backward(self, grad):
        if self._y is None:
            raise StateError("activation backward called before forward")
        y = self._y
        return y * (grad - (grad * y).sum(axis=1, keepdims=True))

    @property
    def params(self):
        return []

    @property
    def grads(self):
        return []


class Dropout:
    """Inverted dropout: train mode zeroes units with probability ``rate``
    and scales survivors by 1/(1-rate); inference is the identity."""

    def __init__(self, rate, rng):
        if not 0.0 <= rate < 1.0:
            raise InvalidHyperparameter(f"dropout rate must be in [0,1), got {rate}")
        self.rate = rate
        self.rng = rng
        self._mask = None

    def forward(self, x, training=False):
        x = np.asarray(x, dtype=np.float64)
        if not training or self.rate == 0.0:
            self._mask = None
            return x
        keep = 1.0 - self.rate
        self._mask = (self.rng.random(x.shape) >= self.rate) / keep
        return x * self._mask

    def backward(self, grad):
        if self._mask is None:
            return grad
        return grad * self._mask

    @property
    def params(self):
        return []

    @property
    def grads(self):
        return []
