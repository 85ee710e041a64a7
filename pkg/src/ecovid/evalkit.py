"""Regression/classification metrics, Pearson correlation, Likert means.

Classification metrics with a zero denominator are reported as NaN plus an
entry in the ``undefined`` set instead of a silent 0, so reports never
fabricate scores. Correlations use the sample (n-1) normalization; constant
columns correlate 0 with everything and get flagged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyError, RangeError, ShapeError


# ---------------------------------------------------------------------------
# Regression metrics


def _paired(y, yhat):
    y = np.asarray(y, dtype=float).ravel()
    yhat = np.asarray(yhat, dtype=float).ravel()
    if y.shape[0] != yhat.shape[0]:
        raise ShapeError(f"length mismatch: {y.shape[0]} vs {yhat.shape[0]}")
    if y.shape[0] == 0:
        raise EmptyError("metrics need at least one sample")
    return y, yhat


def mse(y, yhat) -> float:
    y, yhat = _paired(y, yhat)
    return float(((y - yhat) ** 2).mean())


def rmse(y, yhat) -> float:
    return math.sqrt(mse(y, yhat))


def mae(y, yhat) -> float:
    y, yhat = _paired(y, yhat)
    return float(np.abs(y - yhat).mean())


# ---------------------------------------------------------------------------
# Classification metrics


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    tn: int
    fp: int
    fn: int

    @classmethod
    def from_labels(cls, y_true, y_pred) -> "ConfusionMatrix":
        y_true, y_pred = _paired(y_true, y_pred)
        t = y_true > 0
        p = y_pred > 0
        return cls(
            tp=int((t & p).sum()),
            tn=int((~t & ~p).sum()),
            fp=int((~t & p).sum()),
            fn=int((t & ~p).sum()),
        )

    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


@dataclass(frozen=True)
class ClassificationMetrics:
    accuracy: float
    precision: float
    recall: float
    f1: float
    undefined: frozenset[str]

    def as_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "undefined": sorted(self.undefined),
        }


def classify_metrics(cm: ConfusionMatrix) -> ClassificationMetrics:
    """Accuracy, precision, recall and F1 from a confusion matrix."""
    undefined = set()

    if cm.total() > 0:
        accuracy = (cm.tp + cm.tn) / cm.total()
    else:
        accuracy, undefined = math.nan, undefined | {"accuracy"}

    if cm.tp + cm.fp > 0:
        precision = cm.tp / (cm.tp + cm.fp)
    else:
        precision = math.nan
        undefined.add("precision")

    if cm.tp + cm.fn > 0:
        recall = cm.tp / (cm.tp + cm.fn)
    else:
        recall = math.nan
        undefined.add("recall")

    if math.isnan(precision) or math.isnan(recall) or precision + recall == 0:
        f1 = math.nan
        undefined.add("f1")
    else:
        f1 = 2.0 * precision * recall / (precision + recall)

    return ClassificationMetrics(accuracy, precision, recall, f1, frozenset(undefined))


# ---------------------------------------------------------------------------
# Correlation


@dataclass(frozen=True)
class CorrelationMatrix:
    names: tuple[str, ...]
    r: np.ndarray  # symmetric, NaN on the diagonal of constant columns
    undefined: tuple[str, ...]  # constant column names


def _pair_r(x: np.ndarray, y: np.ndarray) -> float:
    n = x.shape[0]
    sx = x.std(ddof=1)
    sy = y.std(ddof=1)
    if sx == 0.0 or sy == 0.0:
        return 0.0
    cov = ((x - x.mean()) * (y - y.mean())).sum() / (n - 1)
    return float(np.clip(cov / (sx * sy), -1.0, 1.0))


def pearson_matrix(columns: dict[str, np.ndarray]) -> CorrelationMatrix:
    """Sample Pearson r for every pair of named columns.

    Constant columns yield r = 0 against everything and a NaN diagonal,
    with their names listed as undefined.
    """
    names = tuple(columns.keys())
    vectors = [np.asarray(columns[n], dtype=float).ravel() for n in names]
    if not vectors:
        raise ShapeError("need at least one column")
    n = vectors[0].shape[0]
    if any(v.shape[0] != n for v in vectors):
        raise ShapeError("columns differ in length")
    if n < 2:
        raise ShapeError(f"need at least 2 samples, got {n}")

    k = len(names)
    constant = [v.std(ddof=1) == 0.0 for v in vectors]
    r = np.empty((k, k))
    for i in range(k):
        r[i, i] = math.nan if constant[i] else 1.0
        for j in range(i + 1, k):
            r[i, j] = r[j, i] = _pair_r(vectors[i], vectors[j])
    flagged = tuple(name for name, c in zip(names, constant) if c)
    return CorrelationMatrix(names=names, r=r, undefined=flagged)


def pearson_cross(
    rows: dict[str, np.ndarray], cols: dict[str, np.ndarray]
) -> tuple[tuple[str, ...], tuple[str, ...], np.ndarray, tuple[str, ...]]:
    """Rectangular Pearson block: r between every row column and col column.

    Returns (row_names, col_names, r, flagged_constant_names).
    """
    row_names = tuple(rows.keys())
    col_names = tuple(cols.keys())
    r_vecs = [np.asarray(rows[n], dtype=float).ravel() for n in row_names]
    c_vecs = [np.asarray(cols[n], dtype=float).ravel() for n in col_names]
    if not r_vecs or not c_vecs:
        raise ShapeError("need at least one row and one column variable")
    n = r_vecs[0].shape[0]
    if any(v.shape[0] != n for v in r_vecs + c_vecs):
        raise ShapeError("columns differ in length")
    if n < 2:
        raise ShapeError(f"need at least 2 samples, got {n}")
    out = np.empty((len(row_names), len(col_names)))
    for i, rv in enumerate(r_vecs):
        for j, cv in enumerate(c_vecs):
            out[i, j] = _pair_r(rv, cv)
    flagged = tuple(
        name
        for name, v in list(zip(row_names, r_vecs)) + list(zip(col_names, c_vecs))
        if v.std(ddof=1) == 0.0
    )
    return row_names, col_names, out, flagged


# ---------------------------------------------------------------------------
# Likert aggregation


def likert_mean(answers: list[int]) -> float:
    """Arithmetic mean of 1-5 Likert answers."""
    if not answers:
        raise EmptyError("no Likert answers to aggregate")
    for a in answers:
        if a != int(a) or not 1 <= a <= 5:
            raise RangeError(f"Likert answer {a!r} outside 1..5")
    return sum(answers) / len(answers)


# ---------------------------------------------------------------------------
# Emission


def correlation_csv(row_names, col_names, r: np.ndarray) -> str:
    """RFC-4180 CSV of a correlation block, full float precision."""
    lines = ["," + ",".join(col_names)]
    for i, name in enumerate(row_names):
        lines.append(name + "," + ",".join(repr(float(v)) for v in r[i]))
    return "\n".join(lines) + "\n"


def _diverging_color(value: float) -> str:
    """Blue (-1) through white (0) to red (+1)."""
    if math.isnan(value):
        return "rgb(200,200,200)"
    v = max(-1.0, min(1.0, value))
    if v >= 0:
        t = v
        r, g, b = 255, round(255 - 177 * t), round(255 - 212 * t)
    else:
        t = -v
        r, g, b = round(255 - 222 * t), round(255 - 153 * t), round(255 - 83 * t)
    return f"rgb({r},{g},{b})"


def correlation_svg(row_names, col_names, r: np.ndarray, title: str = "") -> str:
    """Standalone SVG heatmap with cell values and a diverging legend."""
    cell = 46
    left = 170
    top = 60 if title else 30
    width = left + cell * len(col_names) + 40
    legend_h = 50
    height = top + cell * len(row_names) + legend_h + 30
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">'
    ]
    if title:
        parts.append(f'<text x="{left}" y="24" font-size="14">{title}</text>')
    for j, name in enumerate(col_names):
        x = left + j * cell + cell / 2
        parts.append(
            f'<text x="{x}" y="{top - 8}" text-anchor="middle">{name}</text>'
        )
    for i, name in enumerate(row_names):
        y = top + i * cell + cell / 2 + 4
        parts.append(f'<text x="{left - 8}" y="{y}" text-anchor="end">{name}</text>')
        for j in range(len(col_names)):
            v = float(r[i, j])
            x = left + j * cell
            yy = top + i * cell
            parts.append(
                f'<rect x="{x}" y="{yy}" width="{cell}" height="{cell}" '
                f'fill="{_diverging_color(v)}" stroke="white"/>'
            )
            label = "n/a" if math.isnan(v) else f"{v:.2f}"
            parts.append(
                f'<text x="{x + cell / 2}" y="{yy + cell / 2 + 4}" '
                f'text-anchor="middle">{label}</text>'
            )
    # legend: gradient strip with -1 / 0 / +1 ticks
    ly = top + cell * len(row_names) + 20
    steps = 40
    lw = 200
    for s in range(steps):
        v = -1.0 + 2.0 * s / (steps - 1)
        parts.append(
            f'<rect x="{left + s * lw / steps:.1f}" y="{ly}" '
            f'width="{lw / steps + 0.5:.1f}" height="12" fill="{_diverging_color(v)}"/>'
        )
    for v, anchor in ((-1, "start"), (0, "middle"), (1, "end")):
        x = left + (v + 1) / 2 * lw
        parts.append(
            f'<text x="{x}" y="{ly + 26}" text-anchor="{anchor}">{v:+d}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)
