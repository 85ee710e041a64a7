"""Permutation feature importance on held-out data."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from ..errors import ShapeError
from .forest import ForestModel, forest_predict
from .mlp import MlpModel, mlp_predict
from .ridge import RidgeModel, ridge_predict
from .svr import SvrModel, svr_predict


def _default_predict(model, X):
    if isinstance(model, ForestModel):
        return forest_predict(model, X)
    if isinstance(model, MlpModel):
        return mlp_predict(model, X)
    if isinstance(model, RidgeModel):
        return ridge_predict(model, X)
    if isinstance(model, SvrModel):
        return svr_predict(model, X)
    if hasattr(model, "predict"):
        return model.predict(X)
    if callable(model):
        return model(X)
    raise TypeError(f"no predictor known for {type(model).__name__}")


def permutation_importance(
    model,
    X_test: np.ndarray,
    y_test: np.ndarray,
    metric: Callable[[np.ndarray, np.ndarray], float],
    seed: int = 0,
    repeats: int = 5,
    feature_names: Sequence[str] | None = None,
) -> list[tuple[str, float]]:
    """Rank features by mean metric degradation under column shuffling.

    ``metric(y_true, y_pred)`` must be an error (lower is better); the
    importance of a feature is the mean, over seeded repeats, of the metric
    increase when only that column is shuffled. Returns (name, importance)
    sorted by importance descending, ties by column order.
    """
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    X_test = np.asarray(X_test, dtype=float)
    y_test = np.asarray(y_test, dtype=float).ravel()
    if X_test.ndim != 2:
        raise ShapeError(f"X_test must be 2-D, got shape {X_test.shape}")
    if y_test.shape[0] != X_test.shape[0]:
        raise ShapeError(f"{X_test.shape[0]} rows but {y_test.shape[0]} targets")
    d = X_test.shape[1]
    if feature_names is None:
        names = [str(j) for j in range(d)]
    else:
        names = [str(n) for n in feature_names]
        if len(names) != d:
            raise ShapeError(f"{len(names)} feature names for {d} columns")

    base = metric(y_test, np.asarray(_default_predict(model, X_test), dtype=float))
    rng = np.random.default_rng(seed)
    scores = np.zeros(d)
    for j in range(d):
        degradation = 0.0
        for _ in range(repeats):
            shuffled = X_test.copy()
            shuffled[:, j] = shuffled[rng.permutation(X_test.shape[0]), j]
            pred = np.asarray(_default_predict(model, shuffled), dtype=float)
            degradation += metric(y_test, pred) - base
        scores[j] = degradation / repeats

    order = sorted(range(d), key=lambda j: (-scores[j], j))
    return [(names[j], float(scores[j])) for j in order]
