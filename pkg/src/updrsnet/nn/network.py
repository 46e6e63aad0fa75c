"""Dense feed-forward networks with shared trunk and per-task output heads.

All math is float64. A network is a stack of trunk layers feeding one or
more heads; each head is its own stack of layers ending in the output and
owns a loss plus a mixing weight. Backpropagation sums head gradients
through the shared trunk, weighted by each head's loss weight.

Randomness comes exclusively from :func:`make_rng` (NumPy's PCG64), so a
seed fully determines initialization, dropout masks, and batch order.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..exceptions import TrainingError
from .activations import Activation
from .losses import Loss


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    """Deterministic generator (PCG64) used everywhere in this package."""
    return np.random.Generator(np.random.PCG64(seed))


def init_weights(shape: tuple[int, int], rng: np.random.Generator) -> np.ndarray:
    """Glorot-uniform weight matrix: U(-sqrt(6/(in+out)), +sqrt(6/(in+out)))."""
    n_in, n_out = shape
    if n_in <= 0 or n_out <= 0:
        raise ValueError(f"weight matrix dimensions must be positive, got {shape}")
    limit = math.sqrt(6.0 / (n_in + n_out))
    return rng.uniform(-limit, limit, size=(n_in, n_out))


class DenseLayer:
    """Fully connected layer: activation(x @ w + b), optional inverted dropout.

    Dropout applies after the activation, only in train mode; surviving
    activations are rescaled by 1/(1-p) so eval-mode outputs need no
    correction.
    """

    def __init__(
        self,
        weights: np.ndarray,
        bias: np.ndarray,
        activation: Activation,
        dropout_rate: float = 0.0,
        name: str = "dense",
    ):
        self.w = np.asarray(weights, dtype=np.float64)
        self.b = np.asarray(bias, dtype=np.float64)
        if self.w.ndim != 2:
            raise ValueError(f"layer {name!r}: weights must be 2-d, got {self.w.shape}")
        if self.b.shape != (self.w.shape[1],):
            raise ValueError(
                f"layer {name!r}: bias shape {self.b.shape} does not match output width {self.w.shape[1]}"
            )
        if not 0.0 <= dropout_rate < 1.0:
            raise ValueError(f"layer {name!r}: dropout rate must be in [0, 1), got {dropout_rate}")
        self.activation = activation
        self.dropout_rate = float(dropout_rate)
        self.name = name
        self.dw: np.ndarray | None = None
        self.db: np.ndarray | None = None
        self._mask: np.ndarray | None = None
        self._cache: tuple | None = None

    @classmethod
    def create(
        cls,
        n_in: int,
        n_out: int,
        activation: Activation,
        dropout_rate: float = 0.0,
        rng: np.random.Generator | None = None,
        name: str = "dense",
    ) -> "DenseLayer":
        """New layer with Glorot-uniform weights (zeros when rng is None) and zero bias."""
        if rng is None:
            weights = np.zeros((n_in, n_out))
        else:
            weights = init_weights((n_in, n_out), rng)
        return cls(weights, np.zeros(n_out), activation, dropout_rate, name)

    @property
    def n_in(self) -> int:
        return self.w.shape[0]

    @property
    def n_out(self) -> int:
        return self.w.shape[1]

    @property
    def n_params(self) -> int:
        return self.w.size + self.b.size

    def forward(self, x: np.ndarray, train: bool = False, rng: np.random.Generator | None = None) -> np.ndarray:
        if x.ndim != 2 or x.shape[1] != self.n_in:
            raise ValueError(
                f"layer {self.name!r}: expected input of shape (batch, {self.n_in}), got {x.shape}"
            )
        z = x @ self.w + self.b
        a = self.activation.apply(z)
        mask = None
        if train and self.dropout_rate > 0.0:
            if rng is not None:
                self._mask = (rng.random(a.shape) >= self.dropout_rate) / (1.0 - self.dropout_rate)
            if self._mask is None or self._mask.shape != a.shape:
                raise TrainingError(
                    f"layer {self.name!r}: no dropout mask available; pass an rng to sample one"
                )
            mask = self._mask
            out = a * mask
        else:
            out = a
        self._cache = (x, z, a, mask, out)
        return out

    def backward(self, grad_out: np.ndarray) -> np.ndarray:
        """Given dL/d(output), store dL/dw and dL/db and return dL/d(input)."""
        if self._cache is None:
            raise TrainingError(f"layer {self.name!r}: backward called before forward")
        x, z, a, mask, _ = self._cache
        g = grad_out * mask if mask is not None else grad_out
        dz = g * self.activation.derivative(z, a)
        self.dw = x.T @ dz
        self.db = dz.sum(axis=0)
        return dz @ self.w.T

    @property
    def output(self) -> np.ndarray:
        """Output of the most recent forward pass."""
        if self._cache is None:
            raise TrainingError(f"layer {self.name!r}: no forward pass has run")
        return self._cache[4]


class Head:
    """A named output branch: its own layer stack, loss, and mixing weight."""

    def __init__(self, name: str, kind: str, layers: Sequence[DenseLayer], loss: Loss, weight: float = 1.0):
        if not layers:
            raise ValueError(f"head {name!r} needs at least one layer")
        if weight < 0:
            raise ValueError(f"head {name!r}: loss weight must be non-negative, got {weight}")
        self.name = name
        self.kind = kind
        self.layers = list(layers)
        self.loss = loss
        self.weight = float(weight)

    @property
    def out_dim(self) -> int:
        return self.layers[-1].n_out


class Network:
    """Trunk + heads dense network with hand-rolled backprop."""

    def __init__(self, input_dim: int, trunk: Sequence[DenseLayer], heads: Sequence[Head]):
        if not heads:
            raise ValueError("a network needs at least one head")
        self.input_dim = int(input_dim)
        self.trunk = list(trunk)
        self.heads = list(heads)
        self._check_wiring()
        names = [layer.name for layer in self.layers()]
        if len(names) != len(set(names)):
            raise ValueError(f"duplicate layer names: {sorted(n for n in names if names.count(n) > 1)}")

    def _check_wiring(self) -> None:
        dim = self.input_dim
        for layer in self.trunk:
            if layer.n_in != dim:
                raise ValueError(
                    f"layer {layer.name!r} expects {layer.n_in} inputs but receives {dim}"
                )
            dim = layer.n_out
        for head in self.heads:
            hdim = dim
            for layer in head.layers:
                if layer.n_in != hdim:
                    raise ValueError(
                        f"layer {layer.name!r} expects {layer.n_in} inputs but receives {hdim}"
                    )
                hdim = layer.n_out

    @property
    def trunk_dim(self) -> int:
        return self.trunk[-1].n_out if self.trunk else self.input_dim

    def layers(self) -> list[DenseLayer]:
        """All layers in deterministic order: trunk first, then heads in order."""
        out = list(self.trunk)
        for head in self.heads:
            out.extend(head.layers)
        return out

    @property
    def n_params(self) -> int:
        return sum(layer.n_params for layer in self.layers())

    def head(self, name: str) -> Head:
        for h in self.heads:
            if h.name == name:
                return h
        raise KeyError(f"no head named {name!r}; available: {[h.name for h in self.heads]}")

    def head_index(self, name: str) -> int:
        for i, h in enumerate(self.heads):
            if h.name == name:
                return i
        raise KeyError(f"no head named {name!r}; available: {[h.name for h in self.heads]}")

    def forward(
        self, x: np.ndarray, train: bool = False, rng: np.random.Generator | None = None
    ) -> list[np.ndarray]:
        """Run the network; returns one output array per head.

        Eval mode (the default) is deterministic: dropout is skipped
        entirely. Train mode needs ``rng`` to sample fresh dropout masks;
        passing ``rng=None`` in train mode reuses the previous masks, which
        is what finite-difference gradient checks need.
        """
        x = np.asarray(x, dtype=np.float64)
        if x.ndim == 1:
            x = x.reshape(1, -1)
        if x.shape[1] != self.input_dim:
            raise ValueError(f"expected input of shape (batch, {self.input_dim}), got {x.shape}")
        h = x
        for layer in self.trunk:
            h = layer.forward(h, train=train, rng=rng)
        self._trunk_out_shape = h.shape
        outputs = []
        for head in self.heads:
            ho = h
            for layer in head.layers:
                ho = layer.forward(ho, train=train, rng=rng)
            outputs.append(ho)
        return outputs

    def forward_trunk(self, x: np.ndarray) -> np.ndarray:
        """Eval-mode activations of the last trunk layer (the latent code for autoencoders)."""
        x = np.asarray(x, dtype=np.float64)
        if x.ndim == 1:
            x = x.reshape(1, -1)
        h = x
        for layer in self.trunk:
            h = layer.forward(h, train=False)
        return h

    def loss(self, outputs: Sequence[np.ndarray], targets: Sequence[np.ndarray]) -> float:
        """Weighted sum of per-head losses."""
        if len(outputs) != len(self.heads) or len(targets) != len(self.heads):
            raise ValueError(
                f"expected {len(self.heads)} outputs and targets, got {len(outputs)} and {len(targets)}"
            )
        return sum(
            head.weight * head.loss.value(out, tgt)
            for head, out, tgt in zip(self.heads, outputs, targets)
        )

    def backward(self, targets: Sequence[np.ndarray]) -> None:
        """Backpropagate the weighted loss; leaves dw/db on every layer.

        Must follow a forward pass (layer caches are consumed here). Head
        gradients are scaled by their loss weights and summed where they
        meet the trunk.
        """
        if len(targets) != len(self.heads):
            raise ValueError(f"expected {len(self.heads)} target arrays, got {len(targets)}")
        g_trunk = np.zeros(getattr(self, "_trunk_out_shape", None) or (0, self.trunk_dim))
        for head, target in zip(self.heads, targets):
            pred = head.layers[-1].output
            g = head.weight * head.loss.grad(pred, np.asarray(target, dtype=np.float64))
            for layer in reversed(head.layers):
                g = layer.backward(g)
            g_trunk = g_trunk + g
        for layer in reversed(self.trunk):
            g_trunk = layer.backward(g_trunk)

    def parameters(self) -> list[np.ndarray]:
        """Flat list of live parameter arrays (weights and biases, in layer order)."""
        out: list[np.ndarray] = []
        for layer in self.layers():
            out.append(layer.w)
            out.append(layer.b)
        return out

    def gradients(self) -> list[np.ndarray]:
        """Gradients aligned with :meth:`parameters`; requires a backward pass."""
        out: list[np.ndarray] = []
        for layer in self.layers():
            if layer.dw is None or layer.db is None:
                raise TrainingError(f"layer {layer.name!r} has no gradients; run backward first")
            out.append(layer.dw)
            out.append(layer.db)
        return out
