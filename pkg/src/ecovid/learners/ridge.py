"""Ridge classifier: regularized least squares on +/-1 targets, sign threshold."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ShapeError, SingularError


@dataclass(frozen=True)
class RidgeModel:
    weights: np.ndarray
    intercept: float
    alpha: float


def _as_matrix(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ShapeError(f"X must be 2-D, got shape {X.shape}")
    return X


def ridge_fit(X: np.ndarray, y: np.ndarray, alpha: float = 1.0) -> RidgeModel:
    """Solve (Xc'Xc + alpha I) w = Xc' t on centered data, t in {-1,+1}.

    Labels may arrive as {0,1} or {-1,+1}; anything <= 0 maps to -1. The
    intercept keeps the decision function equal to (x - mean(X))'w + mean(t).
    """
    X = _as_matrix(X)
    y = np.asarray(y, dtype=float).ravel()
    if y.shape[0] != X.shape[0]:
        raise ShapeError(f"{X.shape[0]} rows but {y.shape[0]} labels")
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    t = np.where(y > 0, 1.0, -1.0)
    x_mean = X.mean(axis=0)
    t_mean = t.mean()
    Xc = X - x_mean
    gram = Xc.T @ Xc + alpha * np.eye(X.shape[1])
    rhs = Xc.T @ t
    try:
        w = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError:
        raise SingularError("X'X is singular and alpha is 0")
    if alpha == 0.0:
        residual = np.abs(gram @ w - rhs).max()
        scale = max(1.0, np.abs(rhs).max())
        if not np.isfinite(residual) or residual > 1e-6 * scale:
            raise SingularError("X'X is numerically singular and alpha is 0")
    return RidgeModel(weights=w, intercept=float(t_mean - x_mean @ w), alpha=alpha)


def ridge_decision(model: RidgeModel, X: np.ndarray) -> np.ndarray:
    X = _as_matrix(X)
    if X.shape[1] != model.weights.shape[0]:
        raise ShapeError(
            f"X has {X.shape[1]} columns, model expects {model.weights.shape[0]}"
        )
    return X @ model.weights + model.intercept


def ridge_predict(model: RidgeModel, X: np.ndarray) -> np.ndarray:
    """1 where the decision value is strictly positive, else 0."""
    return (ridge_decision(model, X) > 0.0).astype(int)
