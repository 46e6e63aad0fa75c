"""Elementwise activations with matching analytic derivatives."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


def sigmoid(x: float | np.ndarray) -> float | np.ndarray:
    """Logistic function 1 / (1 + exp(-x)), stable for large |x|.

    Both branches exponentiate a non-positive argument, so there is no
    overflow anywhere on the real line.
    """
    arr = np.asarray(x, dtype=np.float64)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    pos = arr >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-arr[pos]))
    ex = np.exp(arr[~pos])
    out[~pos] = ex / (1.0 + ex)
    return float(out[0]) if scalar else out


def relu(x: float | np.ndarray) -> float | np.ndarray:
    """max(0, x)."""
    out = np.maximum(np.asarray(x, dtype=np.float64), 0.0)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Activation:
    """An activation and its derivative.

    ``derivative(z, a)`` receives both the pre-activation ``z`` and the
    activation output ``a`` so each kind can use whichever is cheaper.
    """

    name: str
    apply: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray, np.ndarray], np.ndarray]


SIGMOID = Activation("sigmoid", sigmoid, lambda z, a: a * (1.0 - a))
RELU = Activation("relu", relu, lambda z, a: (z > 0).astype(np.float64))
LINEAR = Activation("linear", lambda z: z, lambda z, a: np.ones_like(z))

ACTIVATIONS: dict[str, Activation] = {a.name: a for a in (SIGMOID, RELU, LINEAR)}


def get_activation(name: str) -> Activation:
    try:
        return ACTIVATIONS[name]
    except KeyError:
        raise ValueError(f"unknown activation {name!r}; expected one of {sorted(ACTIVATIONS)}") from None
