"""Minimal dense-network engine: layers, activations, losses, optimizers."""

from .activations import ACTIVATIONS, Activation, get_activation, relu, sigmoid
from .losses import BCE_EPS, LOSSES, Loss, bce_grad, bce_loss, get_loss, mse_grad, mse_loss
from .network import DenseLayer, Head, Network, init_weights, make_rng
from .optim import Adam, Sgd, make_optimizer

__all__ = [
    "ACTIVATIONS",
    "Activation",
    "get_activation",
    "relu",
    "sigmoid",
    "BCE_EPS",
    "LOSSES",
    "Loss",
    "bce_grad",
    "bce_loss",
    "get_loss",
    "mse_grad",
    "mse_loss",
    "DenseLayer",
    "Head",
    "Network",
    "init_weights",
    "make_rng",
    "Adam",
    "Sgd",
    "make_optimizer",
]
