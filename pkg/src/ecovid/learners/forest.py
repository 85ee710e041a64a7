"""Random forest regressor: bootstrap bagging of variance-reduction trees.

Trees are grown with the canonical deterministic rule: candidate features
scanned in ascending index order, thresholds at midpoints of consecutive
distinct sorted values, first strictly-smallest total child SSE wins. Per-
tree randomness comes from streams derived from (seed, tree index), so fits
are reproducible and trees could train in parallel without changing output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import EmptyCorpusError, ShapeError


@dataclass(frozen=True)
class ForestModel:
    trees: tuple[dict, ...]  # nested {feature,threshold,left,right} / {value}
    m: int
    seed: int
    max_depth: int | None
    min_leaf: int
    bootstrap: bool


def _best_split(X, y, idx, features, min_leaf):
    """(sse, feature, threshold) of the best valid split, or None."""
    best = None
    for f in features:
        x = X[idx, f]
        order = np.argsort(x, kind="stable")
        xs = x[order]
        ys = y[idx][order]
        n = xs.shape[0]
        cum = np.cumsum(ys)
        cumsq = np.cumsum(ys * ys)
        total, totalsq = cum[-1], cumsq[-1]
        for i in range(min_leaf, n - min_leaf + 1):
            if xs[i - 1] == xs[i]:
                continue
            left_sse = cumsq[i - 1] - cum[i - 1] ** 2 / i
            right_sum = total - cum[i - 1]
            right_sse = (totalsq - cumsq[i - 1]) - right_sum**2 / (n - i)
            sse = left_sse + right_sse
            if best is None or sse < best[0]:
                best = (sse, f, (xs[i - 1] + xs[i]) / 2.0)
    return best


def _grow(X, y, idx, depth, rng, m, max_depth, min_leaf):
    node_y = y[idx]
    if (
        (max_depth is not None and depth >= max_depth)
        or idx.shape[0] < 2 * min_leaf
        or np.all(node_y == node_y[0])
    ):
        return {"value": float(node_y.mean())}
    d = X.shape[1]
    features = np.sort(rng.choice(d, size=m, replace=False))
    best = _best_split(X, y, idx, features, min_leaf)
    if best is None:
        return {"value": float(node_y.mean())}
    _, feature, threshold = best
    mask = X[idx, feature] <= threshold
    return {
        "feature": int(feature),
        "threshold": float(threshold),
        "left": _grow(X, y, idx[mask], depth + 1, rng, m, max_depth, min_leaf),
        "right": _grow(X, y, idx[~mask], depth + 1, rng, m, max_depth, min_leaf),
    }


def _tree_predict_one(node: dict, x: np.ndarray) -> float:
    while "value" not in node:
        node = node["left"] if x[node["feature"]] <= node["threshold"] else node["right"]
    return node["value"]


def forest_fit(
    X: np.ndarray,
    y: np.ndarray,
    n_trees: int = 100,
    m: int | None = None,
    seed: int = 0,
    max_depth: int | None = None,
    min_leaf: int = 1,
    bootstrap: bool = True,
) -> ForestModel:
    """Fit n_trees regression trees on bootstrap resamples of size N.

    ``m`` is the number of features sampled without replacement at each
    node (default ceil(d/3)). ``bootstrap=False`` trains every tree on the
    identity sample, which reduces the forest to bagged copies of the
    single CART tree when m = d.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float).ravel()
    if X.ndim != 2:
        raise ShapeError(f"X must be 2-D, got shape {X.shape}")
    if X.shape[0] == 0:
        raise EmptyCorpusError("cannot fit a forest on an empty training set")
    if y.shape[0] != X.shape[0]:
        raise ShapeError(f"{X.shape[0]} rows but {y.shape[0]} targets")
    n, d = X.shape
    if m is None:
        m = math.ceil(d / 3)
    if not 1 <= m <= d:
        raise ValueError(f"m must be in [1, {d}], got {m}")
    if n_trees < 1:
        raise ValueError(f"n_trees must be >= 1, got {n_trees}")
    if min_leaf < 1:
        raise ValueError(f"min_leaf must be >= 1, got {min_leaf}")

    trees = []
    for t in range(n_trees):
        rng = np.random.default_rng([seed, t])
        idx = rng.integers(0, n, size=n) if bootstrap else np.arange(n)
        trees.append(_grow(X, y, idx, 0, rng, m, max_depth, min_leaf))
    return ForestModel(
        trees=tuple(trees),
        m=m,
        seed=seed,
        max_depth=max_depth,
        min_leaf=min_leaf,
        bootstrap=bootstrap,
    )


def forest_predict(model: ForestModel, X: np.ndarray) -> np.ndarray:
    """Mean of the per-tree predictions."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ShapeError(f"X must be 2-D, got shape {X.shape}")
    out = np.zeros(X.shape[0])
    for tree in model.trees:
        out += [_tree_predict_one(tree, x) for x in X]
    return out / len(model.trees)
