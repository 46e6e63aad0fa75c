"""Training loop, evaluation metrics, repetition averaging, grid search, ablation.

The repetition protocol: repetition ``r`` (1-based) uses seed ``base + r``
for a fresh split, fresh weights, and fresh batch order. Reported means are
plain averages over repetitions, except RMSE which is recomputed as
``sqrt(mean MSE)`` so the mse/rmse identity also holds for the mean row.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Sequence

import numpy as np

from .architectures import (
    ARCHITECTURES,
    CLASSIFICATION,
    REGRESSION,
    RECONSTRUCTION,
    NetworkSpec,
    architecture_spec,
    build_autoencoder,
    with_hidden_activation,
    with_loss_weights,
)
from .dataset import Dataset
from .exceptions import ConfigError, DatasetError, TrainingError
from .nn import Network, get_loss, make_optimizer, make_rng
from .preprocess import NormalizationParams, Split, apply_normalizer, fit_normalizer, split_80_20, split_by_subject

TARGETS = ("motor", "total", "both")
RUN_TASKS = (CLASSIFICATION, REGRESSION, "mixed")

#: Stream keys separating the rng streams of pipeline stages under one seed.
MAIN_STREAM = 0
ENCODER_STREAM = 1
GRID_STREAM = 2


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters and protocol knobs for one experiment."""

    epochs: int = 1000
    batch_size: int = 20
    learning_rate: float = 1e-3
    optimizer: str = "adam"
    seed: int = 0
    repetitions: int = 5
    loss_weights: dict[str, float] | None = None
    target: str = "total"  # "motor" | "total" | "both"
    normalize_on: str = "train"  # "train" | "all"
    normalize_targets: bool = False
    split_by: str = "recording"  # "recording" | "subject"
    hidden_layers: int = 4
    dropout: float = 0.2

    def __post_init__(self) -> None:
        if self.epochs < 1:
            raise ConfigError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.repetitions < 1:
            raise ConfigError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.seed < 0:
            raise ConfigError(f"seed must be non-negative, got {self.seed}")
        if self.target not in TARGETS:
            raise ConfigError(f"target must be one of {TARGETS}, got {self.target!r}")
        if self.normalize_on not in ("train", "all"):
            raise ConfigError(f"normalize_on must be 'train' or 'all', got {self.normalize_on!r}")
        if self.split_by not in ("recording", "subject"):
            raise ConfigError(f"split_by must be 'recording' or 'subject', got {self.split_by!r}")
        if self.learning_rate < 0:
            raise ConfigError(f"learning_rate must be >= 0, got {self.learning_rate}")

    def to_dict(self) -> dict[str, Any]:
        d = {
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "learning_rate": self.learning_rate,
            "optimizer": self.optimizer,
            "seed": self.seed,
            "repetitions": self.repetitions,
            "loss_weights": dict(self.loss_weights) if self.loss_weights else None,
            "target": self.target,
            "normalize_on": self.normalize_on,
            "normalize_targets": self.normalize_targets,
            "split_by": self.split_by,
            "hidden_layers": self.hidden_layers,
            "dropout": self.dropout,
        }
        return d


def fit(
    spec: NetworkSpec,
    X: np.ndarray,
    targets: Sequence[np.ndarray | None],
    config: TrainConfig,
    stream_key: int = MAIN_STREAM,
    epoch_callback: Callable[[int, Network], None] | None = None,
) -> tuple[Network, list[float]]:
    """Realize a network from ``spec`` and train it on ``X``.

    ``stream_key`` separates the rng streams of different pipeline stages
    (e.g. the autoencoder pre-stage) that share one experiment seed.
    """
    init_ss, shuffle_ss, dropout_ss = np.random.SeedSequence([config.seed, stream_key]).spawn(3)
    from .architectures import realize

    net = realize(spec, make_rng(init_ss))
    trace = train(net, X, targets, config, make_rng(shuffle_ss), make_rng(dropout_ss), epoch_callback)
    return net, trace


def train(
    net: Network,
    X: np.ndarray,
    targets: Sequence[np.ndarray | None],
    config: TrainConfig,
    shuffle_rng: np.random.Generator,
    dropout_rng: np.random.Generator,
    epoch_callback: Callable[[int, Network], None] | None = None,
) -> list[float]:
    """Mini-batch training; returns the per-epoch mean loss trace.

    ``targets`` is aligned with the network's heads; ``None`` marks a
    reconstruction head whose target is the input batch itself. Training
    indices are reshuffled every epoch; the last batch may be smaller.
    """
    n = X.shape[0]
    if n == 0:
        raise DatasetError("cannot train on zero samples")
    if len(targets) != len(net.heads):
        raise ValueError(f"expected {len(net.heads)} target arrays, got {len(targets)}")
    for t in targets:
        if t is not None and t.shape[0] != n:
            raise ValueError(f"target rows {t.shape[0]} do not match input rows {n}")
    optimizer = make_optimizer(config.optimizer, config.learning_rate)
    trace: list[float] = []
    for epoch in range(1, config.epochs + 1):
        order = shuffle_rng.permutation(n)
        epoch_loss = 0.0
        for batch_num, start in enumerate(range(0, n, config.batch_size), start=1):
            rows = order[start : start + config.batch_size]
            xb = X[rows]
            tb = [xb if t is None else t[rows] for t in targets]
            outputs = net.forward(xb, train=True, rng=dropout_rng)
            loss = net.loss(outputs, tb)
            if not math.isfinite(loss):
                raise TrainingError(f"non-finite loss at epoch {epoch}, batch {batch_num}")
            net.backward(tb)
            try:
                optimizer.step(net)
            except TrainingError as err:
                raise TrainingError(f"epoch {epoch}, batch {batch_num}: {err}") from None
            epoch_loss += loss * len(rows)
        trace.append(epoch_loss / n)
        if epoch_callback is not None:
            epoch_callback(epoch, net)
    return trace


# ---------------------------------------------------------------------------
# Metrics


def classification_accuracy(prob: np.ndarray, truth: np.ndarray, threshold: float = 0.5) -> np.ndarray:
    """Per-column accuracy; an output strictly above the threshold is 'severe'.

    An output of exactly 0.5 is classified non-severe, mirroring the label
    rule where boundary scores belong to the non-severe class.
    """
    if prob.shape != truth.shape:
        raise ValueError(f"prediction shape {prob.shape} does not match truth shape {truth.shape}")
    if prob.shape[0] == 0:
        raise DatasetError("cannot evaluate on an empty test set")
    predicted = prob > threshold
    return (predicted == (truth > 0.5)).mean(axis=0)


def regression_metrics(pred: np.ndarray, truth: np.ndarray) -> dict[str, np.ndarray]:
    """Per-column mse / rmse / mae; rmse is sqrt(mse) by construction."""
    if pred.shape != truth.shape:
        raise ValueError(f"prediction shape {pred.shape} does not match truth shape {truth.shape}")
    if pred.shape[0] == 0:
        raise DatasetError("cannot evaluate on an empty test set")
    err = pred - truth
    mse = np.mean(err**2, axis=0)
    return {"mse": mse, "rmse": np.sqrt(mse), "mae": np.mean(np.abs(err), axis=0)}


def evaluate_classification(
    net: Network, X: np.ndarray, truth: np.ndarray, head: str = "severity", threshold: float = 0.5
) -> np.ndarray:
    """Eval-mode per-column accuracy of a classification head."""
    outputs = net.forward(X)
    return classification_accuracy(outputs[net.head_index(head)], truth, threshold)


def evaluate_regression(net: Network, X: np.ndarray, truth: np.ndarray, head: str = "updrs") -> dict[str, np.ndarray]:
    """Eval-mode per-column regression metrics of a regression head."""
    outputs = net.forward(X)
    return regression_metrics(outputs[net.head_index(head)], truth)


def reconstruction_mse(net: Network, X: np.ndarray, head: str = "reconstruction") -> float:
    """Eval-mode reconstruction error of an autoencoder(-like) network."""
    outputs = net.forward(X)
    return get_loss("mse").value(outputs[net.head_index(head)], X)


# ---------------------------------------------------------------------------
# Target assembly

_TARGET_COLS = {"motor": (0,), "total": (1,), "both": (0, 1)}


def target_columns(target: str) -> tuple[int, ...]:
    return _TARGET_COLS[target]


def score_names(target: str) -> tuple[str, ...]:
    return ("motor", "total") if target == "both" else (target,)


def _scale_targets(y: np.ndarray, scale: dict[str, dict[str, float]], names: Sequence[str]) -> np.ndarray:
    out = y.copy()
    for i, name in enumerate(names):
        lo, hi = scale[name]["min"], scale[name]["max"]
        span = hi - lo if hi > lo else 1.0
        out[:, i] = (y[:, i] - lo) / span
    return out


def _unscale_targets(y: np.ndarray, scale: dict[str, dict[str, float]], names: Sequence[str]) -> np.ndarray:
    out = y.copy()
    for i, name in enumerate(names):
        lo, hi = scale[name]["min"], scale[name]["max"]
        span = hi - lo if hi > lo else 1.0
        out[:, i] = y[:, i] * span + lo
    return out


def build_targets(
    spec: NetworkSpec,
    updrs: np.ndarray,
    labels: np.ndarray,
    target: str,
    target_scale: dict[str, dict[str, float]] | None = None,
) -> list[np.ndarray | None]:
    """Per-head training targets; ``None`` for reconstruction heads.

    ``updrs`` and ``labels`` are (n, 2) matrices with (motor, total)
    columns; ``target`` selects which columns feed the task heads.
    """
    cols = list(target_columns(target))
    names = score_names(target)
    out: list[np.ndarray | None] = []
    for head in spec.heads:
        if head.kind == RECONSTRUCTION:
            out.append(None)
            continue
        if head.out_dim != len(cols):
            raise ConfigError(
                f"head {head.name!r} has width {head.out_dim} but target {target!r} selects "
                f"{len(cols)} score(s); pick a matching --score"
            )
        if head.kind == CLASSIFICATION:
            out.append(labels[:, cols])
        else:
            y = updrs[:, cols]
            if target_scale is not None:
                y = _scale_targets(y, target_scale, names)
            out.append(y)
    return out


# ---------------------------------------------------------------------------
# Reports


@dataclass
class EvalReport:
    """Per-repetition and mean metrics for one architecture/task/target run."""

    architecture_id: str
    task: str
    target: str
    seed: int
    seeds: list[int]
    repetitions: list[dict[str, dict[str, float]]]
    mean: dict[str, dict[str, float]]
    config: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "format_version": 1,
            "architecture_id": self.architecture_id,
            "task": self.task,
            "target": self.target,
            "seed": self.seed,
            "seeds": list(self.seeds),
            "repetitions": self.repetitions,
            "mean": self.mean,
            "config": self.config,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "EvalReport":
        return cls(
            architecture_id=data["architecture_id"],
            task=data["task"],
            target=data["target"],
            seed=data["seed"],
            seeds=list(data["seeds"]),
            repetitions=data["repetitions"],
            mean=data["mean"],
            config=data.get("config", {}),
        )


def _mean_metrics(per_rep: list[dict[str, dict[str, float]]]) -> dict[str, dict[str, float]]:
    """Average metrics over repetitions; rmse recomputed from the mean mse."""
    out: dict[str, dict[str, float]] = {}
    for score in per_rep[0]:
        metrics: dict[str, float] = {}
        for name in per_rep[0][score]:
            metrics[name] = float(np.mean([rep[score][name] for rep in per_rep]))
        if "mse" in metrics:
            metrics["rmse"] = math.sqrt(metrics["mse"])
        out[score] = metrics
    return out


# ---------------------------------------------------------------------------
# Single runs and repetition protocol


@dataclass
class TrainedModel:
    """A trained network plus everything inference needs."""

    architecture_id: str
    task: str
    target: str
    seed: int
    spec: NetworkSpec
    network: Network
    normalization: NormalizationParams
    encoder_spec: NetworkSpec | None = None
    encoder: Network | None = None
    normalize_targets: bool = False
    target_scale: dict[str, dict[str, float]] | None = None

    def predict(self, features: np.ndarray) -> dict[str, np.ndarray]:
        """Eval-mode predictions from raw (unnormalized) feature rows.

        Returns named columns: ``<score>_severe_prob`` / ``<score>_severe``
        for classification heads and ``<score>_updrs_pred`` for regression
        heads; reconstruction heads are skipped.
        """
        X = np.asarray(features, dtype=np.float64)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        Xn = apply_normalizer(self.normalization, X)
        if self.encoder is not None:
            Xn = self.encoder.forward_trunk(Xn)
        outputs = self.network.forward(Xn)
        names = score_names(self.target)
        result: dict[str, np.ndarray] = {}
        for head, out in zip(self.network.heads, outputs):
            if head.kind == RECONSTRUCTION:
                continue
            if head.kind == CLASSIFICATION:
                for i, score in enumerate(names):
                    result[f"{score}_severe_prob"] = out[:, i]
                    result[f"{score}_severe"] = (out[:, i] > 0.5).astype(np.int64)
            else:
                pred = out
                if self.normalize_targets and self.target_scale is not None:
                    pred = _unscale_targets(pred, self.target_scale, names)
                for i, score in enumerate(names):
                    result[f"{score}_updrs_pred"] = pred[:, i]
        return result


def make_split(dataset: Dataset, seed: int, split_by: str = "recording") -> Split:
    if split_by == "subject":
        return split_by_subject(dataset, seed)
    return split_80_20(dataset, seed)


def _check_run_args(architecture_id: str, task: str, config: TrainConfig) -> TrainConfig:
    info = ARCHITECTURES.get(architecture_id)
    if info is None:
        raise ConfigError(
            f"unknown architecture {architecture_id!r}; valid ids: {sorted(ARCHITECTURES)}"
        )
    if task not in RUN_TASKS:
        raise ConfigError(f"task must be one of {RUN_TASKS}, got {task!r}")
    if task not in info.tasks:
        raise ConfigError(
            f"architecture {architecture_id!r} supports tasks {info.tasks}, got {task!r}"
        )
    if info.fixed_target is not None and config.target != info.fixed_target:
        config = replace(config, target=info.fixed_target)
    if architecture_id == "mixed" and config.target == "both":
        raise ConfigError("the mixed architecture predicts a single score; pick motor or total")
    if architecture_id != "mlp" and config.hidden_layers != 4:
        raise ConfigError("hidden_layers is an ablation knob of the 'mlp' architecture only")
    return config


def run_single(
    dataset: Dataset, architecture_id: str, task: str, config: TrainConfig
) -> tuple[dict[str, dict[str, float]], TrainedModel]:
    """Train one architecture once (one split, one seed) and evaluate it.

    Returns per-score test metrics and the trained model bundle. For
    encoder-based architectures the autoencoder is trained first on the
    normalized training features, then frozen.
    """
    config = _check_run_args(architecture_id, task, config)
    info = ARCHITECTURES[architecture_id]
    split = make_split(dataset, config.seed, config.split_by)
    X = dataset.feature_matrix()
    updrs = dataset.updrs_matrix()
    labels = dataset.label_matrix()
    tr, te = split.train_indices, split.test_indices

    norm = fit_normalizer(X[tr] if config.normalize_on == "train" else X)
    Xtr = apply_normalizer(norm, X[tr])
    Xte = apply_normalizer(norm, X[te])

    encoder_spec = encoder = None
    if info.requires_encoder:
        encoder_spec = build_autoencoder().to_network_spec()
        encoder, _ = fit(encoder_spec, Xtr, [None], config, stream_key=ENCODER_STREAM)
        Xtr = encoder.forward_trunk(Xtr)
        Xte = encoder.forward_trunk(Xte)

    spec = architecture_spec(architecture_id, task, config.target, config.hidden_layers, config.dropout)
    if config.loss_weights:
        spec = with_loss_weights(spec, config.loss_weights)

    names = score_names(config.target)
    target_scale = None
    if config.normalize_targets:
        cols = list(target_columns(config.target))
        ytr = updrs[tr][:, cols]
        target_scale = {
            name: {"min": float(ytr[:, i].min()), "max": float(ytr[:, i].max())}
            for i, name in enumerate(names)
        }
    targets = build_targets(spec, updrs[tr], labels[tr], config.target, target_scale)
    net, _trace = fit(spec, Xtr, targets, config, stream_key=MAIN_STREAM)

    cols = list(target_columns(config.target))
    outputs = net.forward(Xte)
    metrics: dict[str, dict[str, float]] = {name: {} for name in names}
    for head, out in zip(net.heads, outputs):
        if head.kind == RECONSTRUCTION:
            continue
        if head.kind == CLASSIFICATION:
            acc = classification_accuracy(out, labels[te][:, cols])
            for i, name in enumerate(names):
                metrics[name]["accuracy"] = float(acc[i])
        else:
            pred = out
            if target_scale is not None:
                pred = _unscale_targets(pred, target_scale, names)
            reg = regression_metrics(pred, updrs[te][:, cols])
            for i, name in enumerate(names):
                metrics[name]["mse"] = float(reg["mse"][i])
                metrics[name]["rmse"] = float(reg["rmse"][i])
                metrics[name]["mae"] = float(reg["mae"][i])
    if len(names) > 1:
        metrics["average"] = {
            m: float(np.mean([metrics[n][m] for n in names])) for m in metrics[names[0]]
        }
        if "mse" in metrics["average"]:
            metrics["average"]["rmse"] = math.sqrt(metrics["average"]["mse"])

    model = TrainedModel(
        architecture_id=architecture_id,
        task=task,
        target=config.target,
        seed=config.seed,
        spec=spec,
        network=net,
        normalization=norm,
        encoder_spec=encoder_spec,
        encoder=encoder,
        normalize_targets=config.normalize_targets,
        target_scale=target_scale,
    )
    return metrics, model


def _selection_key(task: str, metrics: dict[str, dict[str, float]]) -> float:
    """Lower is better: -accuracy for classification, mse otherwise."""
    scores = [s for s in metrics if s != "average"]
    if task == CLASSIFICATION:
        return -float(np.mean([metrics[s]["accuracy"] for s in scores]))
    return float(np.mean([metrics[s]["mse"] for s in scores]))


@dataclass
class RunOutcome:
    """An :class:`EvalReport` plus the best-of-repetitions trained model."""

    report: EvalReport
    best_model: TrainedModel


def run_repetitions(
    dataset: Dataset, architecture_id: str, task: str, config: TrainConfig
) -> RunOutcome:
    """The repetition protocol: fresh split/init/training per repetition.

    The headline numbers are the repetition means; the returned model is
    the best single repetition by test metric (kept for ``predict``).
    """
    config = _check_run_args(architecture_id, task, config)
    per_rep: list[dict[str, dict[str, float]]] = []
    seeds: list[int] = []
    best: TrainedModel | None = None
    best_key = math.inf
    for r in range(1, config.repetitions + 1):
        seed_r = config.seed + r
        cfg_r = replace(config, seed=seed_r)
        try:
            metrics, model = run_single(dataset, architecture_id, task, cfg_r)
        except TrainingError as err:
            raise TrainingError(f"repetition {r} (seed {seed_r}): {err}") from None
        per_rep.append(metrics)
        seeds.append(seed_r)
        key = _selection_key(task, metrics)
        if key < best_key:
            best_key, best = key, model
    report = EvalReport(
        architecture_id=architecture_id,
        task=task,
        target=config.target,
        seed=config.seed,
        seeds=seeds,
        repetitions=per_rep,
        mean=_mean_metrics(per_rep),
        config=config.to_dict(),
    )
    assert best is not None
    return RunOutcome(report, best)


# ---------------------------------------------------------------------------
# Grid search

GRID_AXES = ("learning_rate", "batch_size", "hidden_activation", "loss")


@dataclass(frozen=True)
class GridSpec:
    """Named axes whose Cartesian product is searched."""

    axes: dict[str, tuple]

    def __post_init__(self) -> None:
        if not self.axes:
            raise ConfigError("grid must define at least one axis")
        unknown = set(self.axes) - set(GRID_AXES)
        if unknown:
            raise ConfigError(f"unknown grid axes {sorted(unknown)}; supported: {GRID_AXES}")
        clean = {}
        for name, values in self.axes.items():
            values = tuple(values)
            if not values:
                raise ConfigError(f"grid axis {name!r} is empty")
            clean[name] = values
        object.__setattr__(self, "axes", clean)

    def points(self) -> list[dict[str, Any]]:
        names = list(self.axes)
        return [dict(zip(names, combo)) for combo in itertools.product(*self.axes.values())]


def _apply_grid_point(
    spec: NetworkSpec, config: TrainConfig, point: dict[str, Any]
) -> tuple[NetworkSpec, TrainConfig]:
    if "learning_rate" in point:
        config = replace(config, learning_rate=float(point["learning_rate"]))
    if "batch_size" in point:
        config = replace(config, batch_size=int(point["batch_size"]))
    if "hidden_activation" in point:
        spec = with_hidden_activation(spec, str(point["hidden_activation"]))
    if "loss" in point:
        loss = str(point["loss"])
        heads = []
        for head in spec.heads:
            if head.kind == CLASSIFICATION:
                if loss not in ("bce", "mse"):
                    raise ConfigError(f"loss {loss!r} is not valid for classification heads")
                heads.append(replace(head, loss=loss))
            elif head.kind == REGRESSION and loss != "mse":
                raise ConfigError(f"loss {loss!r} is not valid for regression heads")
            else:
                heads.append(head)
        spec = replace(spec, heads=tuple(heads))
    return spec, config


def grid_search(
    dataset: Dataset,
    architecture_id: str,
    task: str,
    grid: GridSpec,
    config: TrainConfig,
    budget_epochs: int = 200,
    val_fraction: float = 0.1,
) -> list[dict[str, Any]]:
    """Evaluate every grid point on a validation carve-out of the training split.

    Each point trains once with a reduced budget (``budget_epochs``, one
    repetition) on train-minus-validation; the test split is never touched.
    Classification points are ranked by validation accuracy (descending),
    others by validation MSE (ascending); ties keep grid order.
    """
    config = _check_run_args(architecture_id, task, config)
    info = ARCHITECTURES[architecture_id]
    split = make_split(dataset, config.seed, config.split_by)
    X = dataset.feature_matrix()
    updrs = dataset.updrs_matrix()
    labels = dataset.label_matrix()

    tr = split.train_indices
    perm = make_rng(np.random.SeedSequence([config.seed, GRID_STREAM])).permutation(len(tr))
    n_val = max(1, int(val_fraction * len(tr)))
    val_idx = tr[perm[:n_val]]
    fit_idx = tr[perm[n_val:]]

    norm = fit_normalizer(X[fit_idx] if config.normalize_on == "train" else X)
    Xfit = apply_normalizer(norm, X[fit_idx])
    Xval = apply_normalizer(norm, X[val_idx])

    if info.requires_encoder:
        enc_spec = build_autoencoder().to_network_spec()
        budget_cfg = replace(config, epochs=budget_epochs)
        encoder, _ = fit(enc_spec, Xfit, [None], budget_cfg, stream_key=ENCODER_STREAM)
        Xfit = encoder.forward_trunk(Xfit)
        Xval = encoder.forward_trunk(Xval)

    base_spec = architecture_spec(architecture_id, task, config.target, config.hidden_layers, config.dropout)
    if config.loss_weights:
        base_spec = with_loss_weights(base_spec, config.loss_weights)

    names = score_names(config.target)
    cols = list(target_columns(config.target))
    results: list[dict[str, Any]] = []
    for index, point in enumerate(grid.points()):
        spec, cfg = _apply_grid_point(base_spec, config, point)
        cfg = replace(cfg, epochs=budget_epochs, repetitions=1)
        targets = build_targets(spec, updrs[fit_idx], labels[fit_idx], cfg.target)
        net, _ = fit(spec, Xfit, targets, cfg, stream_key=MAIN_STREAM)
        outputs = net.forward(Xval)
        entry: dict[str, Any] = {"params": point}
        for head, out in zip(net.heads, outputs):
            if head.kind == CLASSIFICATION:
                acc = classification_accuracy(out, labels[val_idx][:, cols])
                entry["val_accuracy"] = float(np.mean(acc))
            elif head.kind == REGRESSION:
                reg = regression_metrics(out, updrs[val_idx][:, cols])
                entry["val_mse"] = float(np.mean(reg["mse"]))
        if task == CLASSIFICATION:
            entry["_key"] = (-entry["val_accuracy"], index)
        else:
            entry["_key"] = (entry["val_mse"], index)
        results.append(entry)
    results.sort(key=lambda e: e["_key"])
    for rank, entry in enumerate(results, start=1):
        entry.pop("_key")
        entry["rank"] = rank
    return results


# ---------------------------------------------------------------------------
# Ablation (layer-count study)


def run_ablation(
    dataset: Dataset, config: TrainConfig, layer_counts: Sequence[int] = (1, 2, 3, 4, 5)
) -> dict[str, Any]:
    """Layer-count study of the baseline MLP for both tasks and both scores.

    Returns ``rows[score][n_layers] = {mse, rmse, mae, accuracy}`` (mean
    over repetitions) plus the underlying reports.
    """
    rows: dict[str, dict[int, dict[str, float]]] = {"motor": {}, "total": {}}
    reports: list[EvalReport] = []
    for score in ("motor", "total"):
        for n in layer_counts:
            cell: dict[str, float] = {}
            for task in (REGRESSION, CLASSIFICATION):
                cfg = replace(config, target=score, hidden_layers=n)
                outcome = run_repetitions(dataset, "mlp", task, cfg)
                reports.append(outcome.report)
                cell.update(outcome.report.mean[score])
            rows[score][n] = cell
    return {"rows": rows, "reports": reports}
