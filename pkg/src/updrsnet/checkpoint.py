"""Model checkpoints: one JSON document holding specs, weights, and the
normalization sidecar.

Weights are stored as flat row-major lists per layer. JSON floats round-trip
through ``repr`` exactly, so a reloaded network reproduces the original's
outputs bit for bit (the contract only requires 1e-12).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .architectures import NetworkSpec, realize
from .exceptions import ConfigError
from .experiment import TrainedModel
from .ioutil import atomic_write_json
from .nn import Network
from .preprocess import NormalizationParams

CHECKPOINT_VERSION = 1


def network_to_doc(spec: NetworkSpec, net: Network) -> dict[str, Any]:
    weights: dict[str, Any] = {}
    for layer in net.layers():
        weights[layer.name] = {
            "shape": list(layer.w.shape),
            "w": layer.w.flatten(order="C").tolist(),
            "b": layer.b.tolist(),
        }
    return {"spec": spec.to_dict(), "weights": weights}


def network_from_doc(doc: dict[str, Any]) -> tuple[NetworkSpec, Network]:
    try:
        spec = NetworkSpec.from_dict(doc["spec"])
        weights = doc["weights"]
    except (KeyError, TypeError, ValueError) as err:
        raise ConfigError(f"malformed network document in checkpoint: {err}") from None
    net = realize(spec, rng=None)
    for layer in net.layers():
        if layer.name not in weights:
            raise ConfigError(f"checkpoint is missing weights for layer {layer.name!r}")
        entry = weights[layer.name]
        shape = tuple(entry["shape"])
        if shape != layer.w.shape:
            raise ConfigError(
                f"checkpoint layer {layer.name!r} has shape {shape}, expected {layer.w.shape}"
            )
        layer.w = np.array(entry["w"], dtype=np.float64).reshape(shape, order="C")
        b = np.array(entry["b"], dtype=np.float64)
        if b.shape != layer.b.shape:
            raise ConfigError(
                f"checkpoint layer {layer.name!r} has bias shape {b.shape}, expected {layer.b.shape}"
            )
        layer.b = b
    return spec, net


def save_checkpoint(path: str | Path, model: TrainedModel) -> None:
    doc: dict[str, Any] = {
        "format_version": CHECKPOINT_VERSION,
        "architecture_id": model.architecture_id,
        "task": model.task,
        "target": model.target,
        "seed": model.seed,
        "normalize_targets": model.normalize_targets,
        "target_scale": model.target_scale,
        "normalization": model.normalization.to_dict(),
        "encoder": None
        if model.encoder is None
        else network_to_doc(model.encoder_spec, model.encoder),
        "network": network_to_doc(model.spec, model.network),
    }
    atomic_write_json(path, doc)


def load_checkpoint(path: str | Path) -> TrainedModel:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"checkpoint not found: {path}")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as err:
        raise ConfigError(f"checkpoint {path} is not valid JSON: {err}") from None
    if not isinstance(doc, dict) or doc.get("format_version") != CHECKPOINT_VERSION:
        raise ConfigError(
            f"checkpoint {path} has unsupported format_version "
            f"{doc.get('format_version') if isinstance(doc, dict) else None!r}"
        )
    required = ("architecture_id", "task", "target", "seed", "normalization", "network")
    missing = [key for key in required if key not in doc]
    if missing:
        raise ConfigError(f"checkpoint {path} is missing fields: {missing}")
    if not doc["normalization"]:
        raise ConfigError(f"checkpoint {path} has no normalization sidecar")
    try:
        normalization = NormalizationParams.from_dict(doc["normalization"])
    except (KeyError, TypeError, ValueError) as err:
        raise ConfigError(f"checkpoint {path}: bad normalization sidecar: {err}") from None
    spec, net = network_from_doc(doc["network"])
    encoder_spec = encoder = None
    if doc.get("encoder") is not None:
        encoder_spec, encoder = network_from_doc(doc["encoder"])
    return TrainedModel(
        architecture_id=doc["architecture_id"],
        task=doc["task"],
        target=doc["target"],
        seed=int(doc["seed"]),
        spec=spec,
        network=net,
        normalization=normalization,
        encoder_spec=encoder_spec,
        encoder=encoder,
        normalize_targets=bool(doc.get("normalize_targets", False)),
        target_scale=doc.get("target_scale"),
    )
