"""JSON serialization of fitted models.

Documents look like {model_type, hyperparameters, parameters, seed,
feature_names}; floats are written with full round-trip precision so a
loaded model reproduces identical predictions.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..errors import SchemaError
from .forest import ForestModel
from .mlp import MlpModel
from .ridge import RidgeModel
from .scaling import ScalerParams
from .svr import SvrModel


def _arr(a) -> list:
    return np.asarray(a, dtype=float).tolist()


def model_to_dict(model, feature_names=None) -> dict:
    if isinstance(model, ScalerParams):
        doc = {
            "model_type": "scaler",
            "hyperparameters": {},
            "parameters": {"means": _arr(model.means), "stds": _arr(model.stds)},
            "seed": None,
        }
    elif isinstance(model, RidgeModel):
        doc = {
            "model_type": "ridge",
            "hyperparameters": {"alpha": model.alpha},
            "parameters": {
                "weights": _arr(model.weights),
                "intercept": model.intercept,
            },
            "seed": None,
        }
    elif isinstance(model, SvrModel):
        doc = {
            "model_type": "svr",
            "hyperparameters": {
                "C": model.C,
                "epsilon": model.epsilon,
                "kernel": model.kernel,
                "gamma": model.gamma,
            },
            "parameters": {
                "dual_coefs": _arr(model.dual_coefs),
                "support_vectors": _arr(model.support_vectors),
                "bias": model.bias,
            },
            "seed": None,
        }
    elif isinstance(model, ForestModel):
        doc = {
            "model_type": "forest",
            "hyperparameters": {
                "n_trees": len(model.trees),
                "m": model.m,
                "max_depth": model.max_depth,
                "min_leaf": model.min_leaf,
                "bootstrap": model.bootstrap,
            },
            "parameters": {"trees": list(model.trees)},
            "seed": model.seed,
        }
    elif isinstance(model, MlpModel):
        doc = {
            "model_type": "mlp",
            "hyperparameters": {
                "layer_sizes": list(model.layer_sizes),
                "activation": model.activation,
                "eta": model.eta,
                "max_iter": model.max_iter,
            },
            "parameters": {
                "weights": [_arr(w) for w in model.weights],
                "biases": [_arr(b) for b in model.biases],
            },
            "seed": model.seed,
        }
    else:
        raise TypeError(f"cannot serialize {type(model).__name__}")
    doc["feature_names"] = list(feature_names) if feature_names is not None else None
    return doc


def model_from_dict(doc: dict):
    try:
        kind = doc["model_type"]
        hp = doc["hyperparameters"]
        params = doc["parameters"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed model document: missing {exc}")
    if kind == "scaler":
        return ScalerParams(
            means=np.asarray(params["means"], dtype=float),
            stds=np.asarray(params["stds"], dtype=float),
        )
    if kind == "ridge":
        return RidgeModel(
            weights=np.asarray(params["weights"], dtype=float),
            intercept=float(params["intercept"]),
            alpha=float(hp["alpha"]),
        )
    if kind == "svr":
        return SvrModel(
            dual_coefs=np.asarray(params["dual_coefs"], dtype=float),
            support_vectors=np.asarray(params["support_vectors"], dtype=float),
            bias=float(params["bias"]),
            kernel=hp["kernel"],
            gamma=None if hp["gamma"] is None else float(hp["gamma"]),
            C=float(hp["C"]),
            epsilon=float(hp["epsilon"]),
        )
    if kind == "forest":
        return ForestModel(
            trees=tuple(params["trees"]),
            m=int(hp["m"]),
            seed=doc.get("seed") or 0,
            max_depth=hp["max_depth"],
            min_leaf=int(hp["min_leaf"]),
            bootstrap=bool(hp["bootstrap"]),
        )
    if kind == "mlp":
        return MlpModel(
            weights=tuple(np.asarray(w, dtype=float) for w in params["weights"]),
            biases=tuple(np.asarray(b, dtype=float) for b in params["biases"]),
            activation=hp["activation"],
            layer_sizes=tuple(hp["layer_sizes"]),
            eta=float(hp["eta"]),
            max_iter=int(hp["max_iter"]),
            seed=doc.get("seed") or 0,
        )
    raise SchemaError(f"unknown model_type {kind!r}")


def save_model(model, path: str | Path, feature_names=None) -> None:
    doc = model_to_dict(model, feature_names=feature_names)
    Path(path).write_text(
        json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


def load_model(path: str | Path):
    """Load a saved model; returns (model, feature_names)."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return model_from_dict(doc), doc.get("feature_names")
