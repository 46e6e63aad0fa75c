"""Parkinson's Telemonitoring dataset: loading, validation, labels, statistics.

The canonical file (``parkinsons_updrs.data``) is a UTF-8 CSV with one header
row and 22 columns: ``subject#``, the two UPDRS targets, and the 19 model
input features listed in :data:`FEATURE_COLUMNS`. Columns are matched by
header name, never by position.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from decimal import Decimal
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .exceptions import DatasetError

#: The 19 network inputs, in canonical column order.
FEATURE_COLUMNS: tuple[str, ...] = (
    "age",
    "sex",
    "test_time",
    "Jitter(%)",
    "Jitter(Abs)",
    "Jitter:RAP",
    "Jitter:PPQ5",
    "Jitter:DDP",
    "Shimmer",
    "Shimmer(dB)",
    "Shimmer:APQ3",
    "Shimmer:APQ5",
    "Shimmer:APQ11",
    "Shimmer:DDA",
    "NHR",
    "HNR",
    "RPDE",
    "DFA",
    "PPE",
)

TARGET_COLUMNS: tuple[str, ...] = ("motor_UPDRS", "total_UPDRS")
SUBJECT_COLUMN = "subject#"
ALL_COLUMNS: tuple[str, ...] = (SUBJECT_COLUMN,) + FEATURE_COLUMNS[:3] + TARGET_COLUMNS + FEATURE_COLUMNS[3:]

#: Row count of the canonical telemonitoring file.
CANONICAL_ROW_COUNT = 5875

#: UPDRS severity cutoffs: motor > 20 and total > 25 are "severe";
#: boundary values belong to the non-severe class.
MOTOR_SEVERITY_THRESHOLD = 20.0
TOTAL_SEVERITY_THRESHOLD = 25.0


@dataclass(frozen=True)
class Record:
    """One voice recording: subject id, the two UPDRS targets, 19 features."""

    subject_id: int
    motor_updrs: float
    total_updrs: float
    features: np.ndarray  # shape (19,), float64, read-only

    def __post_init__(self) -> None:
        feats = np.asarray(self.features, dtype=np.float64)
        if feats.shape != (len(FEATURE_COLUMNS),):
            raise DatasetError(
                f"record must have exactly {len(FEATURE_COLUMNS)} features, got shape {feats.shape}"
            )
        if not np.all(np.isfinite(feats)):
            raise DatasetError("record contains non-finite feature values")
        if feats[1] not in (0.0, 1.0):
            raise DatasetError(f"sex must be 0 or 1, got {feats[1]}")
        feats.flags.writeable = False
        object.__setattr__(self, "features", feats)

    @property
    def age(self) -> float:
        return float(self.features[0])

    @property
    def sex(self) -> int:
        return int(self.features[1])

    @property
    def test_time(self) -> float:
        return float(self.features[2])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Record):
            return NotImplemented
        return (
            self.subject_id == other.subject_id
            and self.motor_updrs == other.motor_updrs
            and self.total_updrs == other.total_updrs
            and np.array_equal(self.features, other.features)
        )


@dataclass(frozen=True)
class SeverityLabel:
    """Binary severity classes derived from the two UPDRS scores."""

    motor_severe: bool
    total_severe: bool


class Dataset:
    """Immutable, ordered collection of :class:`Record`."""

    def __init__(self, records: Sequence[Record], source_path: str = "<memory>"):
        self.records: tuple[Record, ...] = tuple(records)
        self.source_path = source_path

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def feature_matrix(self) -> np.ndarray:
        """All features as an (n, 19) float64 matrix in record order."""
        return np.array([r.features for r in self.records], dtype=np.float64)

    def updrs_matrix(self) -> np.ndarray:
        """Targets as an (n, 2) matrix with columns (motor_UPDRS, total_UPDRS)."""
        return np.array([(r.motor_updrs, r.total_updrs) for r in self.records], dtype=np.float64)

    def label_matrix(self) -> np.ndarray:
        """Severity classes as an (n, 2) float matrix, columns (motor, total)."""
        updrs = self.updrs_matrix()
        labels = np.empty_like(updrs)
        labels[:, 0] = updrs[:, 0] > MOTOR_SEVERITY_THRESHOLD
        labels[:, 1] = updrs[:, 1] > TOTAL_SEVERITY_THRESHOLD
        return labels

    def subject_ids(self) -> np.ndarray:
        return np.array([r.subject_id for r in self.records], dtype=np.int64)


def derive_labels(record: Record) -> SeverityLabel:
    """Threshold the UPDRS scores into severe / non-severe classes.

    Strictly-greater thresholds: a motor score of exactly 20.0 or a total
    score of exactly 25.0 is non-severe.
    """
    if not (math.isfinite(record.motor_updrs) and math.isfinite(record.total_updrs)):
        raise DatasetError("UPDRS scores must be finite to derive severity labels")
    return SeverityLabel(
        motor_severe=record.motor_updrs > MOTOR_SEVERITY_THRESHOLD,
        total_severe=record.total_updrs > TOTAL_SEVERITY_THRESHOLD,
    )


def load_dataset(path: str | Path) -> Dataset:
    """Load the telemonitoring CSV into a :class:`Dataset`.

    Columns are mapped by header name. Raises :class:`DatasetError` on a
    missing file, a header whose column set differs from the canonical 22
    names, a non-numeric cell (reported with data row number and column
    name), or a file with no data rows.
    """
    path = Path(path)
    if not path.exists():
        raise DatasetError(f"file not found: {path}")
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError(f"empty file: {path}") from None
        header = [h.strip() for h in header]
        _check_header(header, path)
        col = {name: header.index(name) for name in ALL_COLUMNS}
        records: list[Record] = []
        for row_num, row in enumerate(reader, start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue  # tolerate a trailing blank line
            if len(row) != len(header):
                raise DatasetError(
                    f"{path}: data row {row_num} has {len(row)} cells, expected {len(header)}"
                )
            values = {}
            for name in ALL_COLUMNS:
                cell = row[col[name]].strip()
                try:
                    values[name] = float(cell)
                except ValueError:
                    raise DatasetError(
                        f"{path}: non-numeric value {cell!r} at data row {row_num}, column {name!r}"
                    ) from None
            features = np.array([values[name] for name in FEATURE_COLUMNS], dtype=np.float64)
            try:
                records.append(
                    Record(
                        subject_id=int(values[SUBJECT_COLUMN]),
                        motor_updrs=values["motor_UPDRS"],
                        total_updrs=values["total_UPDRS"],
                        features=features,
                    )
                )
            except DatasetError as err:
                raise DatasetError(f"{path}: data row {row_num}: {err}") from None
    if not records:
        raise DatasetError(f"empty dataset: {path} has a header but no data rows")
    return Dataset(records, source_path=str(path))


def save_dataset(dataset: Dataset, path: str | Path) -> None:
    """Write the dataset back to CSV in canonical column order.

    Floats are written with ``repr`` so a load/save/load cycle yields
    identical records.
    """
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(ALL_COLUMNS)
        for rec in dataset.records:
            values = {
                SUBJECT_COLUMN: rec.subject_id,
                "motor_UPDRS": repr(rec.motor_updrs),
                "total_UPDRS": repr(rec.total_updrs),
            }
            for name, value in zip(FEATURE_COLUMNS, rec.features):
                values[name] = repr(float(value))
            writer.writerow([values[name] for name in ALL_COLUMNS])


def _check_header(header: list[str], path: Path) -> None:
    expected = set(ALL_COLUMNS)
    seen = set(header)
    if len(header) != len(seen):
        dupes = sorted({h for h in header if header.count(h) > 1})
        raise DatasetError(f"{path}: duplicate header columns {dupes}")
    if seen != expected:
        missing = sorted(expected - seen)
        extra = sorted(seen - expected)
        parts = []
        if missing:
            parts.append(f"missing columns {missing}")
        if extra:
            parts.append(f"unexpected columns {extra}")
        raise DatasetError(f"{path}: header mismatch: " + "; ".join(parts))


@dataclass(frozen=True)
class FeatureStats:
    """Per-feature summary: mean, sample std, quartiles, max."""

    mean: float
    std: float
    q25: float
    q50: float
    q75: float
    max: float


def column_statistics(dataset: Dataset) -> dict[str, FeatureStats]:
    """Summary statistics per feature column over all records.

    Std is the sample standard deviation (divisor n-1); quartiles use
    linear interpolation between order statistics. A dataset with a single
    record has no defined sample std and is rejected.
    """
    n = len(dataset)
    if n == 0:
        raise DatasetError("cannot compute statistics of an empty dataset")
    if n == 1:
        raise DatasetError("sample standard deviation is undefined for a single record")
    X = dataset.feature_matrix()
    q25, q50, q75 = np.quantile(X, [0.25, 0.50, 0.75], axis=0, method="linear")
    mean = X.mean(axis=0)
    std = X.std(axis=0, ddof=1)
    mx = X.max(axis=0)
    return {
        name: FeatureStats(float(mean[i]), float(std[i]), float(q25[i]), float(q50[i]), float(q75[i]), float(mx[i]))
        for i, name in enumerate(FEATURE_COLUMNS)
    }


STAT_FIELDS: tuple[str, ...] = ("mean", "std", "q25", "q50", "q75", "max")


def load_reference_stats() -> dict[str, dict[str, Decimal]]:
    """Published per-feature statistics, as exact decimals.

    Values are kept as :class:`~decimal.Decimal` so their printed precision
    is available to the comparison rule.
    """
    text = resources.files("updrsnet.data").joinpath("feature_stats_reference.json").read_text()
    raw = json.loads(text)
    return {feat: {k: Decimal(v) for k, v in stats.items()} for feat, stats in raw.items()}


@dataclass(frozen=True)
class StatDeviation:
    """One computed-vs-reference cell comparison."""

    feature: str
    stat: str
    computed: float
    expected: float
    deviation: float  # relative where expected != 0, absolute otherwise
    tolerance: float  # allowed deviation on the same scale
    ok: bool


def compare_statistics(
    stats: dict[str, FeatureStats],
    reference: dict[str, dict[str, Decimal]] | None = None,
    rel_tol: float = 0.005,
) -> list[StatDeviation]:
    """Compare computed statistics against the published reference table.

    A cell passes when it is within ``rel_tol`` relative error of the
    reference value, or within half a unit of the reference's printed
    last decimal place (several reference cells are rounded to two
    significant figures, which alone exceeds 0.5%).
    """
    if reference is None:
        reference = load_reference_stats()
    out: list[StatDeviation] = []
    for feat, ref in reference.items():
        comp = stats[feat]
        for stat in STAT_FIELDS:
            expected = ref[stat]
            computed = getattr(comp, stat)
            half_ulp = 0.5 * float(Decimal(1).scaleb(expected.as_tuple().exponent))
            exp_f = float(expected)
            abs_err = abs(computed - exp_f)
            if exp_f == 0.0:
                deviation = abs_err
                tolerance = max(1e-12, half_ulp)
            else:
                deviation = abs_err / abs(exp_f)
                tolerance = max(rel_tol, half_ulp / abs(exp_f))
            out.append(
                StatDeviation(feat, stat, computed, exp_f, deviation, tolerance, deviation <= tolerance)
            )
    return out


def subset(dataset: Dataset, indices: Iterable[int]) -> Dataset:
    """A new dataset holding the records at ``indices`` (in that order)."""
    records = dataset.records
    return Dataset([records[i] for i in indices], source_path=dataset.source_path)
