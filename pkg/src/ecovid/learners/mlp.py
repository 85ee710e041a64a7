"""Single-output MLP regressor trained by full-batch gradient descent on MSE."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DivergenceError, ShapeError

_ACTIVATIONS = {
    "relu": (lambda z: np.maximum(z, 0.0), lambda z: (z > 0.0).astype(float)),
    "tanh": (np.tanh, lambda z: 1.0 - np.tanh(z) ** 2),
}


@dataclass(frozen=True)
class MlpModel:
    weights: tuple[np.ndarray, ...]  # per layer, (fan_in, fan_out)
    biases: tuple[np.ndarray, ...]
    activation: str
    layer_sizes: tuple[int, ...]  # hidden sizes
    eta: float
    max_iter: int
    seed: int
    loss_history: tuple[float, ...] = field(default=(), compare=False)


def init_params(
    n_features: int, layer_sizes: tuple[int, ...], seed: int
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Seeded Glorot-uniform weights and zero biases, linear output layer."""
    rng = np.random.default_rng(seed)
    dims = [n_features, *layer_sizes, 1]
    weights, biases = [], []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return weights, biases


def _forward(weights, biases, X, activation):
    act, _ = _ACTIVATIONS[activation]
    pre, post = [], [X]
    a = X
    for layer, (W, b) in enumerate(zip(weights, biases)):
        z = a @ W + b
        pre.append(z)
        a = z if layer == len(weights) - 1 else act(z)
        post.append(a)
    return pre, post


def mlp_loss_and_grads(weights, biases, X, y, activation):
    """MSE loss and its gradients w.r.t. every weight and bias, by backprop."""
    _, act_grad = _ACTIVATIONS[activation]
    n = X.shape[0]
    pre, post = _forward(weights, biases, X, activation)
    yhat = post[-1][:, 0]
    err = yhat - y
    loss = float((err**2).mean())

    delta = (2.0 * err / n)[:, None]  # d loss / d output pre-activation
    grads_w = [None] * len(weights)
    grads_b = [None] * len(weights)
    for layer in range(len(weights) - 1, -1, -1):
        grads_w[layer] = post[layer].T @ delta
        grads_b[layer] = delta.sum(axis=0)
        if layer > 0:
            delta = (delta @ weights[layer].T) * act_grad(pre[layer - 1])
    return loss, grads_w, grads_b


def mlp_fit(
    X: np.ndarray,
    y: np.ndarray,
    layer_sizes: tuple[int, ...] = (16,),
    eta: float = 0.01,
    max_iter: int = 1000,
    seed: int = 0,
    activation: str = "relu",
    tol: float = 1e-12,
) -> MlpModel:
    """Full-batch gradient descent: w <- w - eta * grad, b likewise.

    Stops after max_iter updates or when the loss improvement over one
    iteration drops below tol. NaN or infinite loss raises DivergenceError
    naming the iteration.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float).ravel()
    if X.ndim != 2:
        raise ShapeError(f"X must be 2-D, got shape {X.shape}")
    if y.shape[0] != X.shape[0]:
        raise ShapeError(f"{X.shape[0]} rows but {y.shape[0]} targets")
    if eta <= 0:
        raise ValueError(f"eta must be > 0, got {eta}")
    if activation not in _ACTIVATIONS:
        raise ValueError(f"unknown activation {activation!r}")
    layer_sizes = tuple(int(s) for s in layer_sizes)

    weights, biases = init_params(X.shape[1], layer_sizes, seed)
    history: list[float] = []
    prev_loss = np.inf
    for it in range(max_iter):
        loss, grads_w, grads_b = mlp_loss_and_grads(weights, biases, X, y, activation)
        if not np.isfinite(loss):
            raise DivergenceError(it)
        history.append(loss)
        if prev_loss - loss < tol and it > 0:
            break
        prev_loss = loss
        for layer in range(len(weights)):
            weights[layer] = weights[layer] - eta * grads_w[layer]
            biases[layer] = biases[layer] - eta * grads_b[layer]

    return MlpModel(
        weights=tuple(weights),
        biases=tuple(biases),
        activation=activation,
        layer_sizes=layer_sizes,
        eta=eta,
        max_iter=max_iter,
        seed=seed,
        loss_history=tuple(history),
    )


def mlp_predict(model: MlpModel, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != model.weights[0].shape[0]:
        raise ShapeError(
            f"X must be (m,{model.weights[0].shape[0]}), got {X.shape}"
        )
    _, post = _forward(list(model.weights), list(model.biases), X, model.activation)
    return post[-1][:, 0]
