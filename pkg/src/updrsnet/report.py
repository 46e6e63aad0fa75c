"""Result-table assembly: computed metrics side by side with the published
reference results this pipeline aims to reproduce.

Reference numbers are carried as a static comparison column, never asserted:
the original study leaves optimizer, learning rate, dropout, and loss
weights unspecified, so exact equality is not a contract.
"""

from __future__ import annotations

from typing import Any, Mapping

from .architectures import ARCHITECTURES
from .experiment import EvalReport

#: Row order of the architecture comparison tables.
TABLE_ORDER = ("mlp", "mlp-after-ae", "double", "ae-joint", "mixed")

#: Published accuracy (%) per architecture; the double-task net was only
#: reported as an average over both scores.
REFERENCE_ACCURACY: dict[str, dict[str, float]] = {
    "mlp": {"motor": 98.38, "total": 98.47, "average": 98.43},
    "mlp-after-ae": {"motor": 99.15, "total": 98.89, "average": 99.02},
    "double": {"average": 98.43},
    "ae-joint": {"motor": 98.98, "total": 98.89, "average": 98.94},
    "mixed": {"motor": 99.32, "total": 98.98, "average": 99.15},
}

#: Published regression errors (raw UPDRS scale) per score and architecture.
REFERENCE_REGRESSION: dict[str, dict[str, dict[str, float]]] = {
    "motor": {
        "mlp": {"mse": 1.9603, "rmse": 1.4, "mae": 0.8263},
        "mlp-after-ae": {"mse": 0.9616, "rmse": 0.9806, "mae": 0.538},
        "ae-joint": {"mse": 0.8971, "rmse": 0.9471, "mae": 0.6012},
        "mixed": {"mse": 0.1399, "rmse": 0.374, "mae": 0.2442},
    },
    "total": {
        "mlp": {"mse": 4.1276, "rmse": 2.031, "mae": 1.2739},
        "mlp-after-ae": {"mse": 1.0412, "rmse": 1.02, "mae": 0.607},
        "ae-joint": {"mse": 0.9196, "rmse": 0.9589, "mae": 0.8697},
        "mixed": {"mse": 0.1753, "rmse": 0.4186, "mae": 0.2857},
    },
}

#: Published layer-count ablation of the baseline MLP.
REFERENCE_ABLATION: dict[str, dict[int, dict[str, float]]] = {
    "motor": {
        1: {"mse": 519.2614, "rmse": 22.7873079, "mae": 21.29, "accuracy": 87.94},
        2: {"mse": 5.5454, "rmse": 2.3548673, "mae": 1.6048, "accuracy": 96.51},
        3: {"mse": 4.3517, "rmse": 2.08607287, "mae": 1.3244, "accuracy": 96.68},
        4: {"mse": 1.9603, "rmse": 1.40010714, "mae": 0.8263, "accuracy": 98.38},
        5: {"mse": 3.4661, "rmse": 1.86174649, "mae": 1.1328, "accuracy": 95.91},
    },
    "total": {
        1: {"mse": 50.0422, "rmse": 7.07405117, "mae": 5.4907, "accuracy": 86.81},
        2: {"mse": 6.8737, "rmse": 2.62177421, "mae": 1.8628, "accuracy": 95.23},
        3: {"mse": 8.1247, "rmse": 2.85038594, "mae": 1.9226, "accuracy": 97.79},
        4: {"mse": 4.1276, "rmse": 2.03164958, "mae": 1.2739, "accuracy": 98.47},
        5: {"mse": 5.7784, "rmse": 2.40383028, "mae": 1.5774, "accuracy": 97.96},
    },
}


def _fmt(value: float | None, pct: bool = False, width: int = 10) -> str:
    if value is None:
        return "-".rjust(width)
    return f"{value * 100:.2f}".rjust(width) if pct else f"{value:.4f}".rjust(width)


def _fmt_ref(value: float | None, width: int = 10) -> str:
    return "-".rjust(width) if value is None else f"{value:.4f}".rjust(width)


def display_name(architecture_id: str) -> str:
    return ARCHITECTURES[architecture_id].display_name


def render_eval_report(report: EvalReport) -> str:
    """Aligned text table: one row per repetition plus the mean row."""
    scores = list(report.mean)
    metric_names = [m for s in scores for m in report.mean[s]]
    columns = [f"{s}.{m}" for s in scores for m in report.mean[s]]
    width = max(12, *(len(c) + 2 for c in columns))
    lines = [
        f"architecture: {report.architecture_id} ({display_name(report.architecture_id)})",
        f"task: {report.task}   target: {report.target}   base seed: {report.seed}",
        "",
        "rep".ljust(6) + "seed".rjust(8) + "".join(c.rjust(width) for c in columns),
    ]
    for i, (seed, rep) in enumerate(zip(report.seeds, report.repetitions), start=1):
        cells = "".join(f"{rep[s][m]:.6f}".rjust(width) for s in scores for m in report.mean[s])
        lines.append(f"{i}".ljust(6) + f"{seed}".rjust(8) + cells)
    mean_cells = "".join(f"{report.mean[s][m]:.6f}".rjust(width) for s in scores for m in report.mean[s])
    lines.append("mean".ljust(6) + "".rjust(8) + mean_cells)
    return "\n".join(lines) + "\n"


def accuracy_table(computed: Mapping[str, Mapping[str, float]]) -> str:
    """Accuracy comparison across architectures (computed vs reference, %).

    ``computed[arch_id][score]`` holds accuracy fractions; missing
    architectures or scores render as '-'.
    """
    header = (
        "Net".ljust(14)
        + "Motor(%)".rjust(10)
        + "ref".rjust(10)
        + "Total(%)".rjust(10)
        + "ref".rjust(10)
        + "Avg(%)".rjust(10)
        + "ref".rjust(10)
    )
    lines = [header, "-" * len(header)]
    for arch in TABLE_ORDER:
        got = computed.get(arch, {})
        ref = REFERENCE_ACCURACY.get(arch, {})
        cells = []
        for score in ("motor", "total", "average"):
            value = got.get(score)
            cells.append(_fmt(value, pct=True))
            rv = ref.get(score)
            cells.append("-".rjust(10) if rv is None else f"{rv:.2f}".rjust(10))
        lines.append(display_name(arch).ljust(14) + "".join(cells))
    return "\n".join(lines) + "\n"


def regression_table(score: str, computed: Mapping[str, Mapping[str, float]]) -> str:
    """MSE/RMSE/MAE comparison for one score (computed vs reference)."""
    header = (
        "Net".ljust(14)
        + "MSE".rjust(10)
        + "ref".rjust(10)
        + "RMSE".rjust(10)
        + "ref".rjust(10)
        + "MAE".rjust(10)
        + "ref".rjust(10)
    )
    lines = [f"score: {score}", header, "-" * len(header)]
    reference = REFERENCE_REGRESSION[score]
    for arch in TABLE_ORDER:
        got = computed.get(arch, {})
        ref = reference.get(arch, {})
        cells = []
        for metric in ("mse", "rmse", "mae"):
            cells.append(_fmt(got.get(metric)))
            cells.append(_fmt_ref(ref.get(metric)))
        lines.append(display_name(arch).ljust(14) + "".join(cells))
    return "\n".join(lines) + "\n"


def ablation_table(rows: Mapping[str, Mapping[int, Mapping[str, float]]]) -> str:
    """Layer-count study (computed vs reference) for both scores."""
    header = (
        "layers".ljust(8)
        + "MSE".rjust(11)
        + "ref".rjust(11)
        + "RMSE".rjust(10)
        + "ref".rjust(10)
        + "MAE".rjust(10)
        + "ref".rjust(10)
        + "Acc(%)".rjust(10)
        + "ref".rjust(10)
    )
    lines = []
    for score in ("motor", "total"):
        lines.append(f"score: {score}")
        lines.append(header)
        lines.append("-" * len(header))
        for n in sorted(rows.get(score, {})):
            cell = rows[score][n]
            ref = REFERENCE_ABLATION[score].get(n, {})
            line = (
                str(n).ljust(8)
                + f"{cell['mse']:.4f}".rjust(11)
                + _fmt_ref(ref.get("mse"), 11)
                + f"{cell['rmse']:.4f}".rjust(10)
                + _fmt_ref(ref.get("rmse"))
                + f"{cell['mae']:.4f}".rjust(10)
                + _fmt_ref(ref.get("mae"))
                + f"{cell['accuracy'] * 100:.2f}".rjust(10)
                + ("-".rjust(10) if "accuracy" not in ref else f"{ref['accuracy']:.2f}".rjust(10))
            )
            lines.append(line)
        lines.append("")
    return "\n".join(lines) + "\n"


def accuracy_payload(computed: Mapping[str, Mapping[str, float]]) -> dict[str, Any]:
    return {
        "metric": "accuracy",
        "rows": {
            arch: {
                "display_name": display_name(arch),
                "computed_percent": {
                    s: computed[arch][s] * 100 for s in computed.get(arch, {})
                },
                "reference_percent": REFERENCE_ACCURACY.get(arch, {}),
            }
            for arch in TABLE_ORDER
            if arch in computed
        },
    }


def regression_payload(score: str, computed: Mapping[str, Mapping[str, float]]) -> dict[str, Any]:
    return {
        "metric": "regression",
        "score": score,
        "rows": {
            arch: {
                "display_name": display_name(arch),
                "computed": dict(computed[arch]),
                "reference": REFERENCE_REGRESSION[score].get(arch, {}),
            }
            for arch in TABLE_ORDER
            if arch in computed
        },
    }


def ablation_payload(rows: Mapping[str, Mapping[int, Mapping[str, float]]]) -> dict[str, Any]:
    return {
        "metric": "ablation",
        "rows": {
            score: {
                str(n): {
                    "computed": dict(cell) | {"accuracy_percent": cell["accuracy"] * 100},
                    "reference": REFERENCE_ABLATION[score].get(n, {}),
                }
                for n, cell in rows[score].items()
            }
            for score in rows
        },
    }
