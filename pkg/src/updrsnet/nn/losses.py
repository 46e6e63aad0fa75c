"""Binary cross-entropy and mean-squared-error losses with gradients.

Both losses average over every element of the batch, so gradients returned
by :meth:`Loss.grad` are already batch means.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

#: Probabilities are clamped to [EPS, 1-EPS] before taking logs.
BCE_EPS = 1e-12


def _check_shapes(prediction: np.ndarray, target: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(prediction, dtype=np.float64)
    t = np.asarray(target, dtype=np.float64)
    if p.shape != t.shape:
        raise ValueError(f"prediction shape {p.shape} does not match target shape {t.shape}")
    return p, t


def bce_loss(prediction: np.ndarray, target: np.ndarray) -> float:
    """Mean binary cross-entropy, -[t*ln(p) + (1-t)*ln(1-p)]."""
    p, t = _check_shapes(prediction, target)
    p = np.clip(p, BCE_EPS, 1.0 - BCE_EPS)
    return float(np.mean(-(t * np.log(p) + (1.0 - t) * np.log1p(-p))))


def bce_grad(prediction: np.ndarray, target: np.ndarray) -> np.ndarray:
    """d(bce_loss)/d(prediction); zero where the clamp is active."""
    p, t = _check_shapes(prediction, target)
    clipped = np.clip(p, BCE_EPS, 1.0 - BCE_EPS)
    g = (clipped - t) / (clipped * (1.0 - clipped)) / t.size
    inside = (p >= BCE_EPS) & (p <= 1.0 - BCE_EPS)
    return np.where(inside, g, 0.0)


def mse_loss(prediction: np.ndarray, target: np.ndarray) -> float:
    """Mean of squared differences over all elements."""
    p, t = _check_shapes(prediction, target)
    return float(np.mean((p - t) ** 2))


def mse_grad(prediction: np.ndarray, target: np.ndarray) -> np.ndarray:
    p, t = _check_shapes(prediction, target)
    return 2.0 * (p - t) / t.size


@dataclass(frozen=True)
class Loss:
    name: str
    value: Callable[[np.ndarray, np.ndarray], float]
    grad: Callable[[np.ndarray, np.ndarray], np.ndarray]


BCE = Loss("bce", bce_loss, bce_grad)
MSE = Loss("mse", mse_loss, mse_grad)

LOSSES: dict[str, Loss] = {"bce": BCE, "mse": MSE}


def get_loss(name: str) -> Loss:
    try:
        return LOSSES[name]
    except KeyError:
        raise ValueError(f"unknown loss {name!r}; expected one of {sorted(LOSSES)}") from None
