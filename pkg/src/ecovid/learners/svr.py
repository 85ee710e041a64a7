"""Epsilon-insensitive support vector regression via its standard dual.

The dual is solved in the net coefficients beta_i = alpha_i - alpha_i*:

    maximize  -1/2 b'Kb + y'b - eps * sum|b_i|
    s.t.      sum(b) = 0,  |b_i| <= C

with exact two-variable coordinate (SMO-style) updates that preserve the
equality constraint. Each pairwise subproblem is a piecewise-concave
quadratic in the transfer t (breakpoints where beta_i or beta_j crosses 0),
so the candidate maximizers are the per-sign-region stationary points, the
breakpoints and the box ends; all are evaluated exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import KernelError, ShapeError


@dataclass(frozen=True)
class SvrModel:
    dual_coefs: np.ndarray  # beta, one per training point
    support_vectors: np.ndarray
    bias: float
    kernel: str
    gamma: float | None
    C: float
    epsilon: float


def kernel_matrix(
    X: np.ndarray, Z: np.ndarray, kernel: str, gamma: float | None = None
) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    Z = np.asarray(Z, dtype=float)
    if kernel == "linear":
        return X @ Z.T
    if kernel == "rbf":
        if gamma is None:
            gamma = 1.0 / X.shape[1]
        sq = (
            (X**2).sum(axis=1)[:, None]
            + (Z**2).sum(axis=1)[None, :]
            - 2.0 * X @ Z.T
        )
        return np.exp(-gamma * np.clip(sq, 0.0, None))
    raise ValueError(f"unknown kernel {kernel!r}")


def dual_objective(beta: np.ndarray, K: np.ndarray, y: np.ndarray, epsilon: float) -> float:
    beta = np.asarray(beta, dtype=float)
    return float(-0.5 * beta @ K @ beta + y @ beta - epsilon * np.abs(beta).sum())


def _pair_step(beta_i, beta_j, A, eta, C, epsilon):
    """Best transfer t for the two-variable subproblem, by exact evaluation."""
    lo = max(-C - beta_i, beta_j - C)
    hi = min(C - beta_i, beta_j + C)
    if hi <= lo:
        return 0.0, 0.0
    candidates = {lo, hi}
    for t in (-beta_i, beta_j):
        if lo < t < hi:
            candidates.add(t)
    if eta > 0.0:
        for s1 in (-1.0, 1.0):
            for s2 in (-1.0, 1.0):
                t = (A - epsilon * s1 + epsilon * s2) / eta
                candidates.add(min(hi, max(lo, t)))

    def gain(t):
        return (
            t * A
            - 0.5 * eta * t * t
            - epsilon * (abs(beta_i + t) - abs(beta_i))
            - epsilon * (abs(beta_j - t) - abs(beta_j))
        )

    best_t, best_gain = 0.0, 0.0
    for t in candidates:
        g = gain(t)
        if g > best_gain:
            best_t, best_gain = t, g
    return best_t, best_gain


def _solve_dual(
    K: np.ndarray,
    y: np.ndarray,
    C: float,
    epsilon: float,
    max_sweeps: int = 500,
    tol: float = 1e-12,
) -> np.ndarray:
    n = y.shape[0]
    beta = np.zeros(n)
    g = np.zeros(n)  # K @ beta, maintained incrementally
    diag = np.diag(K)
    for _ in range(max_sweeps):
        improvement = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                A = (y[i] - g[i]) - (y[j] - g[j])
                eta = diag[i] + diag[j] - 2.0 * K[i, j]
                t, gained = _pair_step(beta[i], beta[j], A, max(eta, 0.0), C, epsilon)
                if gained <= 0.0:
                    continue
                beta[i] += t
                beta[j] -= t
                g += t * (K[:, i] - K[:, j])
                improvement += gained
        scale = 1.0 + abs(dual_objective(beta, K, y, epsilon))
        if improvement < tol * scale:
            break
    return beta


def _bias_from_kkt(beta, g, y, C, epsilon) -> float:
    residual = y - g
    band = 1e-8 * max(C, 1.0)
    interior = (np.abs(beta) > band) & (np.abs(beta) < C - band)
    if interior.any():
        return float((residual[interior] - epsilon * np.sign(beta[interior])).mean())
    # all coefficients at a bound or zero: take the midpoint of the feasible
    # bias interval implied by the KKT inequalities
    lowers, uppers = [], []
    for b_i, r_i in zip(beta, residual):
        if abs(b_i) <= band:
            lowers.append(r_i - epsilon)
            uppers.append(r_i + epsilon)
        elif b_i > 0:
            uppers.append(r_i - epsilon)
        else:
            lowers.append(r_i + epsilon)
    lo = max(lowers) if lowers else -np.inf
    hi = min(uppers) if uppers else np.inf
    if not np.isfinite(lo):
        return float(hi)
    if not np.isfinite(hi):
        return float(lo)
    return float((lo + hi) / 2.0)


def svr_fit(
    X: np.ndarray,
    y: np.ndarray,
    C: float = 1.0,
    epsilon: float = 0.1,
    kernel: str = "rbf",
    gamma: float | None = None,
    max_sweeps: int = 500,
    tol: float = 1e-12,
) -> SvrModel:
    """Fit epsilon-SVR; deterministic (the sweep order is fixed)."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float).ravel()
    if X.ndim != 2:
        raise ShapeError(f"X must be 2-D, got shape {X.shape}")
    if y.shape[0] != X.shape[0]:
        raise ShapeError(f"{X.shape[0]} rows but {y.shape[0]} targets")
    if C <= 0:
        raise ValueError(f"C must be > 0, got {C}")
    if epsilon < 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    if kernel == "rbf" and gamma is None:
        gamma = 1.0 / X.shape[1]

    K = kernel_matrix(X, X, kernel, gamma)
    min_eig = float(np.linalg.eigvalsh(K).min())
    if min_eig < -1e-8 * max(1.0, float(np.abs(K).max())):
        raise KernelError(f"kernel matrix is not PSD (min eigenvalue {min_eig:.3e})")

    beta = _solve_dual(K, y, C, epsilon, max_sweeps=max_sweeps, tol=tol)
    bias = _bias_from_kkt(beta, K @ beta, y, C, epsilon)
    return SvrModel(
        dual_coefs=beta,
        support_vectors=X.copy(),
        bias=bias,
        kernel=kernel,
        gamma=gamma,
        C=C,
        epsilon=epsilon,
    )


def svr_predict(model: SvrModel, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != model.support_vectors.shape[1]:
        raise ShapeError(
            f"X must be (m,{model.support_vectors.shape[1]}), got {X.shape}"
        )
    K = kernel_matrix(model.support_vectors, X, model.kernel, model.gamma)
    return model.dual_coefs @ K + model.bias
