"""Run configuration: JSON file, CLI/env overrides, canonical hashing."""

from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError

DEFAULTS: dict = {
    "corpus": {"path": None, "format": "csv"},
    "out_dir": "out",
    "seed": 0,
    "feature_set": "both",
    "split": {"train_fraction": 0.7, "seed": None},
    "popularity": {"combine": "and"},
    "lexicons": {"valence": None, "emotion": None, "stopwords": None},
    "palette": {
        "k": 5,
        "stride": 4,
        "color_model": "rgb",
        "max_iter": 100,
        "tol": 1e-4,
        "svg": False,
    },
    "word_table": {"top_k": 20},
    "models": {
        "ridge": {"alpha": 1.0},
        "svr": {"C": 1.0, "epsilon": 0.1, "kernel": "rbf", "gamma": None},
        "forest": {"n_trees": 100, "m": None, "max_depth": None, "min_leaf": 1},
        "mlp": {"layer_sizes": [16], "activation": "relu", "eta": 0.01,
                "max_iter": 1000},
    },
    "importance": {"repeats": 5},
    "regression_targets": ["likes_pd", "views_pd", "comments_pd", "shares_pd"],
    "jobs": 1,
}

_CHOICES = {
    ("corpus", "format"): ("csv", "json"),
    ("feature_set",): ("raw", "comments", "both"),
    ("popularity", "combine"): ("and", "or"),
    ("palette", "color_model"): ("rgb", "hsv", "lab"),
    ("models", "svr", "kernel"): ("linear", "rbf"),
    ("models", "mlp", "activation"): ("relu", "tanh"),
}


def _merge(defaults: dict, user: dict, path: str = "") -> dict:
    out = copy.deepcopy(defaults)
    for key, value in user.items():
        where = f"{path}.{key}" if path else key
        if key not in defaults:
            raise ConfigError(f"unknown config key {where!r}")
        if isinstance(defaults[key], dict) and not isinstance(value, dict):
            raise ConfigError(f"{where!r} must be an object")
        if isinstance(defaults[key], dict):
            out[key] = _merge(defaults[key], value, where)
        else:
            out[key] = value
    return out


def _validate(data: dict) -> None:
    if not data["corpus"]["path"]:
        raise ConfigError("corpus.path is required")
    for keys, allowed in _CHOICES.items():
        node = data
        for k in keys:
            node = node[k]
        if node not in allowed:
            raise ConfigError(f"{'.'.join(keys)} must be one of {allowed}, got {node!r}")
    frac = data["split"]["train_fraction"]
    if not isinstance(frac, (int, float)) or not 0.0 < frac < 1.0:
        raise ConfigError(f"split.train_fraction must be in (0,1), got {frac!r}")
    if not isinstance(data["seed"], int) or data["seed"] < 0:
        raise ConfigError(f"seed must be a non-negative integer, got {data['seed']!r}")
    for name, minimum in (
        (("palette", "k"), 1),
        (("palette", "stride"), 1),
        (("word_table", "top_k"), 1),
        (("importance", "repeats"), 1),
        (("jobs",), 1),
    ):
        node = data
        for k in name:
            node = node[k]
        if not isinstance(node, int) or node < minimum:
            raise ConfigError(f"{'.'.join(name)} must be an integer >= {minimum}")
    targets = data["regression_targets"]
    allowed_targets = {"likes_pd", "views_pd", "comments_pd", "shares_pd"}
    if not targets or not set(targets) <= allowed_targets:
        raise ConfigError(f"regression_targets must be a subset of {sorted(allowed_targets)}")


@dataclass(frozen=True)
class RunConfig:
    """A validated configuration plus the directory paths resolve against."""

    data: dict
    base_dir: Path

    def __getitem__(self, key):
        return self.data[key]

    @property
    def seed(self) -> int:
        return self.data["seed"]

    @property
    def out_dir(self) -> Path:
        return self.base_dir / self.data["out_dir"]

    @property
    def corpus_path(self) -> Path:
        return self.base_dir / self.data["corpus"]["path"]

    def lexicon_path(self, which: str) -> Path | None:
        value = self.data["lexicons"][which]
        return None if value is None else self.base_dir / value

    @property
    def split_seed(self) -> int:
        value = self.data["split"]["seed"]
        return self.seed if value is None else value

    def config_hash(self) -> str:
        canonical = json.dumps(self.data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def load_config(
    path: str | Path,
    seed: int | None = None,
    split: float | None = None,
    feature_set: str | None = None,
    out_dir: str | None = None,
    jobs: int | None = None,
) -> RunConfig:
    """Load and validate a config file, applying any explicit overrides.

    Override precedence is CLI flag, then the ECOVID_SEED environment
    variable (applied by the CLI), then the file. Relative paths in the
    file resolve against the file's directory.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        user = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")
    if not isinstance(user, dict):
        raise ConfigError("config must be a JSON object")
    data = _merge(DEFAULTS, user)
    if seed is not None:
        data["seed"] = seed
    if split is not None:
        data["split"]["train_fraction"] = split
    if feature_set is not None:
        data["feature_set"] = feature_set
    if out_dir is not None:
        data["out_dir"] = out_dir
    if jobs is not None:
        data["jobs"] = jobs
    _validate(data)
    return RunConfig(data=data, base_dir=path.parent)
