"""A fixed stack of layers with a combined forward/backward."""

import numpy as np

from ..errors import StateError
from .layers import BatchNorm


class Network:
    """Sequential layer stack.

    ``forward`` runs every layer in order; ``backward`` walks the stack
    in reverse, leaving parameter gradients on the layers and returning
    the gradient with respect to the network input.
    """

    def __init__(self, layers):
        self.layers = list(layers)
        self._forward_done = False

    def forward(self, x, training=False):
        for layer in self.layers:
            x = layer.forward(x, training=training)
        self._forward_done = True
        return x

    def backward(self, grad):
        if not self._forward_done:
            raise StateError("network backward called before forward")
        for layer in reversed(self.layers):
            grad = layer.backward(grad)
        return grad

    def params(self):
        out = []
        for layer in self.layers:
            out.extend(layer.params)
        return out

    def grads(self):
        out = []
        for layer in self.layers:
            out.extend(layer.grads)
        return out

    def get_state(self):
        """Deep-copy snapshot of parameters plus batch-norm running stats."""
        state = {"params": [p.copy() for p in self.params()], "running": []}
        for layer in self.layers:
            if isinstance(layer, BatchNorm):
                state["running"].append(
                    (layer.running_mean.copy(), layer.running_var.copy())
                )
        return state

    def set_state(self, state):
        for p, saved in zip(self.params(), state["params"]):
            p[...] = saved
        running = iter(state["running"])
        for layer in self.layers:
            if isinstance(layer, BatchNorm):
                mean, var = next(running)
                layer.running_mean = mean.copy()
                layer.running_var = var.copy()

    def check_finite(self):
        """True when every parameter is finite."""
        return all(np.isfinite(p).all() for p in self.params())
