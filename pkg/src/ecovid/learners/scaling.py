"""Standard scaling with population statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ShapeError


@dataclass(frozen=True)
class ScalerParams:
    means: np.ndarray
    stds: np.ndarray  # population (divide by n)


def scaler_fit(X: np.ndarray) -> ScalerParams:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 1:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {X.shape}")
    return ScalerParams(means=X.mean(axis=0), stds=X.std(axis=0))


def scaler_transform(params: ScalerParams, X: np.ndarray) -> np.ndarray:
    """Columnwise (x - mean)/std; zero-std columns map to 0."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != params.means.shape[0]:
        raise ShapeError(
            f"matrix has {X.shape[1] if X.ndim == 2 else '?'} columns, "
            f"scaler was fit on {params.means.shape[0]}"
        )
    safe = np.where(params.stds == 0.0, 1.0, params.stds)
    out = (X - params.means) / safe
    return np.where(params.stds == 0.0, 0.0, out)
