"""Mini-batch optimizers: plain SGD and Adam."""

from __future__ import annotations

import numpy as np

from ..exceptions import TrainingError
from .network import DenseLayer, Network


def _checked_grads(layer: DenseLayer) -> tuple[np.ndarray, np.ndarray]:
    if layer.dw is None or layer.db is None:
        raise TrainingError(f"layer {layer.name!r} has no gradients; run backward before stepping")
    if not (np.all(np.isfinite(layer.dw)) and np.all(np.isfinite(layer.db))):
        raise TrainingError(f"non-finite gradient in layer {layer.name!r}")
    return layer.dw, layer.db


class Sgd:
    """w <- w - lr * g"""

    def __init__(self, learning_rate: float = 1e-3):
        self.learning_rate = float(learning_rate)

    def step(self, network: Network) -> None:
        for layer in network.layers():
            dw, db = _checked_grads(layer)
            layer.w -= self.learning_rate * dw
            layer.b -= self.learning_rate * db


class Adam:
    """Adam with bias correction (beta1=0.9, beta2=0.999, eps=1e-8)."""

    def __init__(
        self,
        learning_rate: float = 1e-3,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ):
        self.learning_rate = float(learning_rate)
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self._t = 0
        self._state: dict[int, list[np.ndarray]] = {}

    def step(self, network: Network) -> None:
        self._t += 1
        b1, b2 = self.beta1, self.beta2
        c1 = 1.0 - b1**self._t
        c2 = 1.0 - b2**self._t
        for layer in network.layers():
            dw, db = _checked_grads(layer)
            state = self._state.setdefault(
                id(layer),
                [np.zeros_like(layer.w), np.zeros_like(layer.w), np.zeros_like(layer.b), np.zeros_like(layer.b)],
            )
            mw, vw, mb, vb = state
            mw *= b1
            mw += (1 - b1) * dw
            vw *= b2
            vw += (1 - b2) * dw**2
            mb *= b1
            mb += (1 - b1) * db
            vb *= b2
            vb += (1 - b2) * db**2
            layer.w -= self.learning_rate * (mw / c1) / (np.sqrt(vw / c2) + self.eps)
            layer.b -= self.learning_rate * (mb / c1) / (np.sqrt(vb / c2) + self.eps)


OPTIMIZERS = ("sgd", "adam")


def make_optimizer(name: str, learning_rate: float) -> Sgd | Adam:
    if name == "sgd":
        return Sgd(learning_rate)
    if name == "adam":
        return Adam(learning_rate)
    raise ValueError(f"unknown optimizer {name!r}; expected one of {OPTIMIZERS}")
