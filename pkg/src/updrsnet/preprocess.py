"""Min-max feature normalization and seeded train/test splitting.

Normalization maps each feature by ``(x - x_min) / (x_max - x_min)`` using
extrema learned from the training partition, so training features land in
[0, 1] exactly; test values outside the training range are deliberately not
clipped.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .dataset import FEATURE_COLUMNS, Dataset, Record
from .exceptions import DatasetError

TRAIN_FRACTION = 0.8


@dataclass(frozen=True)
class NormalizationParams:
    """Per-feature minima and maxima, aligned with :data:`FEATURE_COLUMNS`."""

    x_min: np.ndarray
    x_max: np.ndarray

    def __post_init__(self) -> None:
        lo = np.asarray(self.x_min, dtype=np.float64)
        hi = np.asarray(self.x_max, dtype=np.float64)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError("x_min and x_max must be 1-d arrays of equal length")
        if np.any(hi < lo):
            raise ValueError("x_max must be >= x_min for every feature")
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "x_min", lo)
        object.__setattr__(self, "x_max", hi)

    def to_dict(self) -> dict[str, dict[str, float]]:
        return {
            name: {"min": float(self.x_min[i]), "max": float(self.x_max[i])}
            for i, name in enumerate(FEATURE_COLUMNS)
        }

    @classmethod
    def from_dict(cls, data: dict[str, dict[str, float]]) -> "NormalizationParams":
        missing = [name for name in FEATURE_COLUMNS if name not in data]
        if missing:
            raise ValueError(f"normalization params missing features: {missing}")
        lo = np.array([data[name]["min"] for name in FEATURE_COLUMNS], dtype=np.float64)
        hi = np.array([data[name]["max"] for name in FEATURE_COLUMNS], dtype=np.float64)
        return cls(lo, hi)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2))

    @classmethod
    def load(cls, path: str | Path) -> "NormalizationParams":
        return cls.from_dict(json.loads(Path(path).read_text()))


def _as_feature_matrix(data: np.ndarray | Sequence[Record] | Dataset) -> np.ndarray:
    if isinstance(data, Dataset):
        return data.feature_matrix()
    if isinstance(data, np.ndarray):
        X = np.asarray(data, dtype=np.float64)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        return X
    return np.array([r.features for r in data], dtype=np.float64)


def fit_normalizer(train_data: np.ndarray | Sequence[Record] | Dataset) -> NormalizationParams:
    """Learn per-feature min/max from the training records only."""
    X = _as_feature_matrix(train_data)
    if X.shape[0] == 0:
        raise DatasetError("cannot fit a normalizer on zero records")
    return NormalizationParams(X.min(axis=0), X.max(axis=0))


def apply_normalizer(
    params: NormalizationParams, data: np.ndarray | Record | Sequence[Record] | Dataset
) -> np.ndarray:
    """Map features into the fitted min-max range.

    Constant features (max == min) map to 0. Out-of-range values are not
    clipped, so test data may fall outside [0, 1].
    """
    single = isinstance(data, Record)
    X = _as_feature_matrix(data.features if single else data)
    span = params.x_max - params.x_min
    safe = np.where(span > 0, span, 1.0)
    out = (X - params.x_min) / safe
    out[:, span == 0] = 0.0
    return out[0] if single else out


@dataclass(frozen=True)
class Split:
    """Disjoint train/test index sets covering a dataset, plus their seed."""

    train_indices: np.ndarray
    test_indices: np.ndarray
    seed: int

    def __post_init__(self) -> None:
        tr = np.asarray(self.train_indices, dtype=np.int64)
        te = np.asarray(self.test_indices, dtype=np.int64)
        tr.flags.writeable = False
        te.flags.writeable = False
        object.__setattr__(self, "train_indices", tr)
        object.__setattr__(self, "test_indices", te)


def split_80_20(dataset: Dataset | int, seed: int) -> Split:
    """Seeded uniform 80/20 split at recording level.

    The PCG64 generator seeded with ``seed`` draws one permutation; the
    first ``floor(0.8 * N)`` positions become the training set. Recordings
    of the same subject may land on both sides, mirroring the evaluation
    protocol this pipeline reproduces.
    """
    n = dataset if isinstance(dataset, int) else len(dataset)
    if n == 0:
        raise DatasetError("cannot split an empty dataset")
    perm = np.random.Generator(np.random.PCG64(seed)).permutation(n)
    n_train = int(TRAIN_FRACTION * n)
    return Split(perm[:n_train], perm[n_train:], seed)


def split_by_subject(dataset: Dataset, seed: int) -> Split:
    """Diagnostic split that keeps each subject entirely on one side.

    Subjects are permuted with the seeded PCG64 generator and the first
    ``floor(0.8 * n_subjects)`` subjects contribute the training records,
    so train/test record counts vary with subject sizes.
    """
    subjects = dataset.subject_ids()
    unique = np.unique(subjects)
    if unique.size < 2:
        raise DatasetError("subject-level split needs at least two subjects")
    perm = np.random.Generator(np.random.PCG64(seed)).permutation(unique.size)
    n_train_subj = int(TRAIN_FRACTION * unique.size)
    train_subjects = set(unique[perm[:n_train_subj]].tolist())
    mask = np.array([s in train_subjects for s in subjects])
    all_idx = np.arange(len(dataset))
    return Split(all_idx[mask], all_idx[~mask], seed)
