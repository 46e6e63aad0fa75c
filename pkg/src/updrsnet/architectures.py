"""Declarative network specs and builders for the five benchmark architectures.

Architecture ids (used by the CLI and in report rows):

==============  =============  ==================================================
id              display name   description
==============  =============  ==================================================
mlp             MLP            19 -> 100 -> 200 -> 300 -> 100 -> head
mlp-after-ae    MLP after AE   same ladder on the 10-d code of a pre-trained,
                               frozen autoencoder (two-stage pipeline)
ae-joint        MLP-AE         autoencoder and task head trained jointly; the
                               task head reads the 10-unit latent layer
double          Double MLP     one width-2 head predicting motor and total
                               scores together, raw 19-feature input
mixed           Mixed MLP      classification AND regression heads for one
                               score, on the 10-d autoencoder code
==============  =============  ==================================================
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from typing import Any

import numpy as np

from .nn import DenseLayer, Head, Network, get_activation, get_loss

CLASSIFICATION = "classification"
REGRESSION = "regression"
RECONSTRUCTION = "reconstruction"

TASKS = (CLASSIFICATION, REGRESSION)
SCORES = ("motor", "total")

INPUT_DIM = 19
LATENT_DIM = 10
AE_HIDDEN = 200

#: Hidden ladder of the reference MLP, found experimentally in the original
#: study; the n-layer ablation variants take prefixes (n <= 4) or append a
#: final 100 (n = 5).
HIDDEN_LADDER = (100, 200, 300, 100)
MAX_HIDDEN_LAYERS = 5

#: 1-based hidden-layer indices that get a dropout layer (the two largest
#: capacity transitions of the 4-layer ladder).
DROPOUT_POSITIONS = (2, 4)
DEFAULT_DROPOUT = 0.2

#: Default output activation / loss per head kind.
HEAD_DEFAULTS = {
    CLASSIFICATION: ("sigmoid", "bce"),
    REGRESSION: ("relu", "mse"),
    RECONSTRUCTION: ("linear", "mse"),
}


@dataclass(frozen=True)
class LayerSpec:
    """One hidden layer: width, activation name, dropout rate after it."""

    size: int
    activation: str = "relu"
    dropout: float = 0.0

    def __post_init__(self) -> None:
        if self.size <= 0:
            raise ValueError(f"layer size must be positive, got {self.size}")
        get_activation(self.activation)
        if not 0.0 <= self.dropout < 1.0:
            raise ValueError(f"dropout must be in [0, 1), got {self.dropout}")


@dataclass(frozen=True)
class HeadSpec:
    """An output branch: optional hidden layers, output width, loss."""

    name: str
    kind: str
    out_dim: int
    activation: str
    loss: str
    loss_weight: float = 1.0
    hidden: tuple[LayerSpec, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in (CLASSIFICATION, REGRESSION, RECONSTRUCTION):
            raise ValueError(f"unknown head kind {self.kind!r}")
        if self.out_dim <= 0:
            raise ValueError(f"head out_dim must be positive, got {self.out_dim}")
        if self.loss_weight < 0:
            raise ValueError(f"loss weight must be non-negative, got {self.loss_weight}")
        get_activation(self.activation)
        get_loss(self.loss)


def make_head(kind: str, name: str, out_dim: int = 1, weight: float = 1.0, hidden: tuple[LayerSpec, ...] = ()) -> HeadSpec:
    activation, loss = HEAD_DEFAULTS[kind]
    return HeadSpec(name=name, kind=kind, out_dim=out_dim, activation=activation, loss=loss, loss_weight=weight, hidden=hidden)


@dataclass(frozen=True)
class NetworkSpec:
    """Everything needed to build (or rebuild) a network deterministically."""

    input_dim: int
    hidden: tuple[LayerSpec, ...]
    heads: tuple[HeadSpec, ...]

    def __post_init__(self) -> None:
        if self.input_dim <= 0:
            raise ValueError(f"input_dim must be positive, got {self.input_dim}")
        if not self.heads:
            raise ValueError("a network spec needs at least one head")

    @property
    def trunk_dim(self) -> int:
        return self.hidden[-1].size if self.hidden else self.input_dim

    @property
    def n_params(self) -> int:
        total = 0
        dim = self.input_dim
        for layer in self.hidden:
            total += dim * layer.size + layer.size
            dim = layer.size
        for head in self.heads:
            hdim = dim
            for layer in head.hidden:
                total += hdim * layer.size + layer.size
                hdim = layer.size
            total += hdim * head.out_dim + head.out_dim
        return total

    def to_dict(self) -> dict[str, Any]:
        return {
            "input_dim": self.input_dim,
            "hidden": [asdict(l) for l in self.hidden],
            "heads": [
                {
                    "name": h.name,
                    "kind": h.kind,
                    "out_dim": h.out_dim,
                    "activation": h.activation,
                    "loss": h.loss,
                    "loss_weight": h.loss_weight,
                    "hidden": [asdict(l) for l in h.hidden],
                }
                for h in self.heads
            ],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "NetworkSpec":
        return cls(
            input_dim=int(data["input_dim"]),
            hidden=tuple(LayerSpec(**l) for l in data["hidden"]),
            heads=tuple(
                HeadSpec(
                    name=h["name"],
                    kind=h["kind"],
                    out_dim=int(h["out_dim"]),
                    activation=h["activation"],
                    loss=h["loss"],
                    loss_weight=float(h["loss_weight"]),
                    hidden=tuple(LayerSpec(**l) for l in h.get("hidden", [])),
                )
                for h in data["heads"]
            ),
        )


@dataclass(frozen=True)
class AutoencoderSpec:
    """Symmetric autoencoder: input -> encoder_hidden -> latent, mirrored decoder."""

    input_dim: int = INPUT_DIM
    encoder_hidden: int = AE_HIDDEN
    latent: int = LATENT_DIM

    def __post_init__(self) -> None:
        if self.latent >= self.input_dim:
            raise ValueError("latent width must be smaller than the input width")

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return (self.input_dim, self.encoder_hidden, self.latent, self.encoder_hidden, self.input_dim)

    def to_network_spec(self) -> NetworkSpec:
        """Trunk = encoder, single reconstruction head = decoder (linear output, MSE)."""
        return NetworkSpec(
            input_dim=self.input_dim,
            hidden=(LayerSpec(self.encoder_hidden), LayerSpec(self.latent)),
            heads=(
                make_head(
                    RECONSTRUCTION,
                    "reconstruction",
                    out_dim=self.input_dim,
                    hidden=(LayerSpec(self.encoder_hidden),),
                ),
            ),
        )


def _check_task(task: str) -> None:
    if task not in TASKS:
        raise ValueError(f"unknown task {task!r}; expected one of {TASKS}")


def _check_score(score: str) -> None:
    if score not in SCORES:
        raise ValueError(f"unknown score {score!r}; expected one of {SCORES}")


def _ladder(n_hidden_layers: int) -> tuple[int, ...]:
    if not 1 <= n_hidden_layers <= MAX_HIDDEN_LAYERS:
        raise ValueError(
            f"n_hidden_layers must be in 1..{MAX_HIDDEN_LAYERS}, got {n_hidden_layers}"
        )
    if n_hidden_layers <= len(HIDDEN_LADDER):
        return HIDDEN_LADDER[:n_hidden_layers]
    return HIDDEN_LADDER + (100,) * (n_hidden_layers - len(HIDDEN_LADDER))


def _hidden_layers(sizes: tuple[int, ...], dropout: float) -> tuple[LayerSpec, ...]:
    return tuple(
        LayerSpec(size, "relu", dropout if (i + 1) in DROPOUT_POSITIONS else 0.0)
        for i, size in enumerate(sizes)
    )


def _task_head(task: str, out_dim: int = 1, weight: float = 1.0) -> HeadSpec:
    return make_head(task, "severity" if task == CLASSIFICATION else "updrs", out_dim, weight)


def build_mlp(
    task: str,
    n_hidden_layers: int = 4,
    input_dim: int = INPUT_DIM,
    dropout: float = DEFAULT_DROPOUT,
) -> NetworkSpec:
    """The baseline MLP; ``n_hidden_layers`` selects the ablation variant."""
    _check_task(task)
    return NetworkSpec(
        input_dim=input_dim,
        hidden=_hidden_layers(_ladder(n_hidden_layers), dropout),
        heads=(_task_head(task),),
    )


def build_autoencoder(input_dim: int = INPUT_DIM) -> AutoencoderSpec:
    return AutoencoderSpec(input_dim=input_dim)


def build_mlp_after_ae(task: str, dropout: float = DEFAULT_DROPOUT) -> NetworkSpec:
    """The baseline ladder reading the frozen encoder's 10-d code."""
    _check_task(task)
    return NetworkSpec(
        input_dim=LATENT_DIM,
        hidden=_hidden_layers(HIDDEN_LADDER, dropout),
        heads=(_task_head(task),),
    )


def build_joint_ae_head(task: str) -> NetworkSpec:
    """Autoencoder and task head sharing the encoder, trained jointly.

    The reconstruction head (the decoder) is declared first so that, under
    equal seeds, the encoder/decoder weights draw the same initialization
    stream as a plain autoencoder; a task weight of zero then reproduces
    plain autoencoder training exactly.
    """
    _check_task(task)
    ae = build_autoencoder().to_network_spec()
    return NetworkSpec(
        input_dim=ae.input_dim,
        hidden=ae.hidden,
        heads=ae.heads + (_task_head(task),),
    )


def build_double_task(task: str, dropout: float = DEFAULT_DROPOUT) -> NetworkSpec:
    """One width-2 head predicting (motor, total) together, raw 19-feature input."""
    _check_task(task)
    return NetworkSpec(
        input_dim=INPUT_DIM,
        hidden=_hidden_layers(HIDDEN_LADDER, dropout),
        heads=(_task_head(task, out_dim=2),),
    )


def build_mixed(score: str, dropout: float = DEFAULT_DROPOUT) -> NetworkSpec:
    """Simultaneous classifier + regressor for one score, on the 10-d code.

    The network shape is the same for either score; ``score`` is validated
    here and selects the training targets downstream.
    """
    _check_score(score)
    return NetworkSpec(
        input_dim=LATENT_DIM,
        hidden=_hidden_layers(HIDDEN_LADDER, dropout),
        heads=(
            make_head(CLASSIFICATION, "severity"),
            make_head(REGRESSION, "updrs"),
        ),
    )


@dataclass(frozen=True)
class ArchitectureInfo:
    """Registry entry tying an architecture id to its builder behaviour."""

    id: str
    display_name: str
    requires_encoder: bool
    tasks: tuple[str, ...]  # tasks accepted by run/reproduce commands
    fixed_target: str | None = None  # "both" for the double-task net


ARCHITECTURES: dict[str, ArchitectureInfo] = {
    "mlp": ArchitectureInfo("mlp", "MLP", False, TASKS),
    "mlp-after-ae": ArchitectureInfo("mlp-after-ae", "MLP after AE", True, TASKS),
    "ae-joint": ArchitectureInfo("ae-joint", "MLP-AE", False, TASKS),
    "double": ArchitectureInfo("double", "Double MLP", False, TASKS, fixed_target="both"),
    "mixed": ArchitectureInfo("mixed", "Mixed MLP", True, ("mixed",)),
}


def architecture_spec(
    architecture_id: str,
    task: str,
    target: str,
    n_hidden_layers: int = 4,
    dropout: float = DEFAULT_DROPOUT,
) -> NetworkSpec:
    """Spec for an architecture id, validated against task and target score."""
    if architecture_id not in ARCHITECTURES:
        raise ValueError(
            f"unknown architecture {architecture_id!r}; valid ids: {sorted(ARCHITECTURES)}"
        )
    if architecture_id == "mlp":
        return build_mlp(task, n_hidden_layers, dropout=dropout)
    if architecture_id == "mlp-after-ae":
        return build_mlp_after_ae(task, dropout=dropout)
    if architecture_id == "ae-joint":
        return build_joint_ae_head(task)
    if architecture_id == "double":
        return build_double_task(task, dropout=dropout)
    return build_mixed(target, dropout=dropout)


def with_loss_weights(spec: NetworkSpec, weights: dict[str, float]) -> NetworkSpec:
    """New spec with per-head loss weights overridden by head name."""
    unknown = set(weights) - {h.name for h in spec.heads}
    if unknown:
        raise ValueError(f"loss weights for unknown heads: {sorted(unknown)}")
    heads = tuple(
        replace(h, loss_weight=float(weights.get(h.name, h.loss_weight))) for h in spec.heads
    )
    return replace(spec, heads=heads)


def with_hidden_activation(spec: NetworkSpec, activation: str) -> NetworkSpec:
    """New spec with every trunk/head hidden layer using ``activation``."""
    get_activation(activation)
    hidden = tuple(replace(l, activation=activation) for l in spec.hidden)
    heads = tuple(
        replace(h, hidden=tuple(replace(l, activation=activation) for l in h.hidden))
        for h in spec.heads
    )
    return NetworkSpec(spec.input_dim, hidden, heads)


def realize(spec: NetworkSpec, rng: np.random.Generator | None) -> Network:
    """Build a live network from a spec.

    Layers are created in deterministic order (trunk, then heads as
    declared) so one rng stream yields reproducible weights. ``rng=None``
    builds zero-weight layers for checkpoint loading.
    """
    trunk: list[DenseLayer] = []
    dim = spec.input_dim
    for i, layer in enumerate(spec.hidden, start=1):
        trunk.append(
            DenseLayer.create(
                dim, layer.size, get_activation(layer.activation), layer.dropout, rng, name=f"hidden{i}"
            )
        )
        dim = layer.size
    heads: list[Head] = []
    for hspec in spec.heads:
        hlayers: list[DenseLayer] = []
        hdim = dim
        for j, layer in enumerate(hspec.hidden, start=1):
            hlayers.append(
                DenseLayer.create(
                    hdim,
                    layer.size,
                    get_activation(layer.activation),
                    layer.dropout,
                    rng,
                    name=f"{hspec.name}_hidden{j}",
                )
            )
            hdim = layer.size
        hlayers.append(
            DenseLayer.create(
                hdim, hspec.out_dim, get_activation(hspec.activation), 0.0, rng, name=f"{hspec.name}_out"
            )
        )
        heads.append(Head(hspec.name, hspec.kind, hlayers, get_loss(hspec.loss), hspec.loss_weight))
    return Network(spec.input_dim, trunk, heads)
