"""Experiment pipeline: features -> train/eval -> correlations -> report.

Every stage writes plain CSV/JSON artifacts into the configured output
directory. Runs are deterministic: all randomness derives from the config
seed, videos are processed in id order, floats are stored at full
round-trip precision, and JSON is dumped with sorted keys, so identical
(corpus, config, seed) reruns produce byte-identical artifacts.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import affect, chroma, evalkit, textprep
from .config import RunConfig
from .corpus import (
    EngagementPerDay,
    SplitSpec,
    VideoRecord,
    dataset_stats,
    label_popularity,
    load_corpus,
    per_day,
    split_indices,
)
from .errors import EcovidError, MissingArtifactError, TooSmallError
from .learners import (
    forest_fit,
    forest_predict,
    mlp_fit,
    mlp_predict,
    model_to_dict,
    permutation_importance,
    ridge_fit,
    ridge_predict,
    scaler_fit,
    scaler_transform,
    svr_fit,
    svr_predict,
)

POPULARITY_COLUMNS = ("likes_pd", "views_pd", "comments_pd", "shares_pd")

RAW_FEATURE_COLUMNS = (
    "duration",
    "post_length",
    "post_emotion_happy",
    "post_emotion_angry",
    "post_emotion_surprise",
    "post_emotion_sad",
    "post_emotion_fear",
    "post_sentiment",
    "mean_intensity",
    "mean_hue",
    "mean_saturation",
    "emoji_count",
)

COMMENT_FEATURE_COLUMNS = (
    "comment_emotion_happy",
    "comment_emotion_angry",
    "comment_emotion_surprise",
    "comment_emotion_sad",
    "comment_emotion_fear",
    "comment_sentiment",
)

RAW_CSV_HEADER = ("id", *RAW_FEATURE_COLUMNS, *POPULARITY_COLUMNS, "target")
COMMENT_CSV_HEADER = ("id", *COMMENT_FEATURE_COLUMNS, *POPULARITY_COLUMNS, "target")

REGRESSION_MODELS = ("svr", "random_forest", "mlp")


# ---------------------------------------------------------------------------
# Artifact bookkeeping


def artifact_paths(cfg: RunConfig) -> dict[str, Path]:
    out = cfg.out_dir
    return {
        "raw_features": out / "raw_features.csv",
        "comment_features": out / "comment_features.csv",
        "palettes": out / "palettes.csv",
        "word_table_posts": out / "word_table_posts.csv",
        "word_table_comments": out / "word_table_comments.csv",
        "emotion_distributions": out / "emotion_distributions.json",
        "failures": out / "failures.json",
        "features_meta": out / "features_meta.json",
        "train_eval": out / "train_eval.json",
        "correlations": out / "correlations.json",
        "report": out / "report.json",
        "summary": out / "summary.txt",
    }


def _sanitize(obj):
    """Replace non-finite floats with None so JSON artifacts stay strict."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    return obj


def _dump_json(obj, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(_sanitize(obj), sort_keys=True, indent=2)
    path.write_text(text + "\n", encoding="utf-8")


def _write_csv(path: Path, header, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    path.write_text(buf.getvalue(), encoding="utf-8")


def _selected_sets(cfg: RunConfig) -> tuple[str, ...]:
    fs = cfg["feature_set"]
    return ("raw", "comments") if fs == "both" else (fs,)


# ---------------------------------------------------------------------------
# Feature extraction


@dataclass
class VideoFeatures:
    id: str
    duration: float
    post_length: int
    emoji_count: int
    post_profile: affect.EmotionProfile
    post_sentiment: float
    comment_profile: affect.EmotionProfile
    comment_sentiment: float
    color: chroma.ColorSummary
    epd: EngagementPerDay
    post_doc: list[str]
    comment_docs: list[list[str]]


def _video_seed(master_seed: int, index: int) -> int:
    return int(np.random.SeedSequence([master_seed, index]).generate_state(1)[0])


def _extract_one(
    record: VideoRecord,
    vlex: dict,
    elex: dict,
    stoplist: set[str],
    palette_cfg: dict,
    kmeans_seed: int,
) -> VideoFeatures:
    post_tokens = textprep.tokenize(textprep.clean(record.post_text))
    comment_docs = [
        textprep.remove_stopwords(
            textprep.tokenize(textprep.clean(comment)), stoplist
        )
        for comment in record.comment_texts
    ]
    comment_profile, comment_sent = affect.comment_affect(record, vlex, elex)
    color = chroma.video_color_summary(
        record.frames_dir,
        k=palette_cfg["k"],
        seed=kmeans_seed,
        stride=palette_cfg["stride"],
        color_model=palette_cfg["color_model"],
        max_iter=palette_cfg["max_iter"],
        tol=palette_cfg["tol"],
    )
    duration = record.duration
    if duration is None:
        # frames carry no timebase; frame count stands in for duration
        duration = float(len(chroma.list_frames(record.frames_dir)))
    return VideoFeatures(
        id=record.id,
        duration=float(duration),
        post_length=len(record.post_text),
        emoji_count=textprep.count_emoji(record.post_text),
        post_profile=affect.emotions(post_tokens, elex),
        post_sentiment=affect.sentiment(post_tokens, vlex),
        comment_profile=comment_profile,
        comment_sentiment=comment_sent,
        color=color,
        epd=per_day(record),
        post_doc=textprep.remove_stopwords(post_tokens, stoplist),
        comment_docs=comment_docs,
    )


def _ordinal_counts(profiles) -> dict[str, int]:
    names = {v: k for k, v in affect.EMOTION_ORDINALS.items()}
    counts = dict.fromkeys(
        sorted(affect.EMOTION_ORDINALS, key=affect.EMOTION_ORDINALS.get), 0
    )
    for profile in profiles:
        counts[names[affect.dominant_ordinal(profile)]] += 1
    return counts


def cmd_features(cfg: RunConfig) -> dict[str, Path]:
    """Extract per-video features and corpus-level text/color artifacts."""
    paths = artifact_paths(cfg)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    records = load_corpus(cfg.corpus_path, cfg["corpus"]["format"])
    records = sorted(records, key=lambda r: r.id)

    vlex = affect.load_valence_lexicon(cfg.lexicon_path("valence"))
    elex = affect.load_emotion_lexicon(cfg.lexicon_path("emotion"))
    stoplist = textprep.load_stopwords(cfg.lexicon_path("stopwords"))
    palette_cfg = cfg["palette"]

    def task(item):
        index, record = item
        try:
            return "ok", _extract_one(
                record, vlex, elex, stoplist, palette_cfg,
                _video_seed(cfg.seed, index),
            )
        except EcovidError as exc:
            return "err", (record.id, f"{type(exc).__name__}: {exc}")

    items = list(enumerate(records))
    if cfg["jobs"] > 1:
        with ThreadPoolExecutor(max_workers=cfg["jobs"]) as pool:
            results = list(pool.map(task, items))
    else:
        results = [task(item) for item in items]

    features = [payload for status, payload in results if status == "ok"]
    failures = sorted(
        (payload for status, payload in results if status == "err"),
        key=lambda pair: pair[0],
    )

    labels = (
        label_popularity([vf.epd for vf in features], cfg["popularity"]["combine"])
        if features
        else []
    )

    selected = _selected_sets(cfg)
    if "raw" in selected:
        rows = []
        for vf, target in zip(features, labels):
            p = vf.post_profile
            rows.append(
                [
                    vf.id,
                    repr(vf.duration),
                    vf.post_length,
                    repr(p.happy), repr(p.angry), repr(p.surprise),
                    repr(p.sad), repr(p.fear),
                    repr(vf.post_sentiment),
                    repr(vf.color.mean_intensity),
                    repr(vf.color.mean_hue),
                    repr(vf.color.mean_saturation),
                    vf.emoji_count,
                    repr(vf.epd.likes_pd), repr(vf.epd.views_pd),
                    repr(vf.epd.comments_pd), repr(vf.epd.shares_pd),
                    target,
                ]
            )
        _write_csv(paths["raw_features"], RAW_CSV_HEADER, rows)

    if "comments" in selected:
        rows = []
        for vf, target in zip(features, labels):
            p = vf.comment_profile
            rows.append(
                [
                    vf.id,
                    repr(p.happy), repr(p.angry), repr(p.surprise),
                    repr(p.sad), repr(p.fear),
                    repr(vf.comment_sentiment),
                    repr(vf.epd.likes_pd), repr(vf.epd.views_pd),
                    repr(vf.epd.comments_pd), repr(vf.epd.shares_pd),
                    target,
                ]
            )
        _write_csv(paths["comment_features"], COMMENT_CSV_HEADER, rows)

    palette_rows = []
    for vf in features:
        for rank, color in enumerate(vf.color.palette, start=1):
            r, g, b = color.rgb
            palette_rows.append(
                [vf.id, rank, repr(r), repr(g), repr(b), repr(color.weight)]
            )
    _write_csv(
        paths["palettes"], ("video_id", "rank", "r", "g", "b", "weight"), palette_rows
    )
    if palette_cfg["svg"]:
        svg_dir = cfg.out_dir / "palettes"
        svg_dir.mkdir(parents=True, exist_ok=True)
        for vf in features:
            (svg_dir / f"{vf.id}.svg").write_text(
                chroma.palette_svg(vf.color.palette) + "\n", encoding="utf-8"
            )

    top_k = cfg["word_table"]["top_k"]
    if "raw" in selected:
        table = textprep.word_table([vf.post_doc for vf in features], top_k)
        _write_csv(
            paths["word_table_posts"],
            ("word", "count", "weight"),
            [[e.word, e.count, repr(e.weight)] for e in table],
        )
    if "comments" in selected:
        docs = [doc for vf in features for doc in vf.comment_docs]
        table = textprep.word_table(docs, top_k)
        _write_csv(
            paths["word_table_comments"],
            ("word", "count", "weight"),
            [[e.word, e.count, repr(e.weight)] for e in table],
        )

    distributions = {}
    if "raw" in selected:
        distributions["posts"] = _ordinal_counts(vf.post_profile for vf in features)
    if "comments" in selected:
        distributions["comments"] = _ordinal_counts(
            vf.comment_profile for vf in features
        )
    _dump_json(distributions, paths["emotion_distributions"])

    _dump_json(
        [{"id": vid, "error": msg} for vid, msg in failures], paths["failures"]
    )

    stats = {}
    if features:
        if "raw" in selected:
            raw_vectors = []
            for vf in features:
                p = vf.post_profile
                raw_vectors.append(
                    dict(
                        zip(
                            RAW_FEATURE_COLUMNS + POPULARITY_COLUMNS,
                            [
                                vf.duration, vf.post_length, p.happy, p.angry,
                                p.surprise, p.sad, p.fear, vf.post_sentiment,
                                vf.color.mean_intensity, vf.color.mean_hue,
                                vf.color.mean_saturation, vf.emoji_count,
                                vf.epd.likes_pd, vf.epd.views_pd,
                                vf.epd.comments_pd, vf.epd.shares_pd,
                            ],
                        )
                    )
                )
            stats["raw"] = {
                name: {"mean": m, "std": s}
                for name, (m, s) in dataset_stats(raw_vectors).items()
            }
        if "comments" in selected:
            com_vectors = []
            for vf in features:
                p = vf.comment_profile
                com_vectors.append(
                    dict(
                        zip(
                            COMMENT_FEATURE_COLUMNS + POPULARITY_COLUMNS,
                            [
                                p.happy, p.angry, p.surprise, p.sad, p.fear,
                                vf.comment_sentiment,
                                vf.epd.likes_pd, vf.epd.views_pd,
                                vf.epd.comments_pd, vf.epd.shares_pd,
                            ],
                        )
                    )
                )
            stats["comments"] = {
                name: {"mean": m, "std": s}
                for name, (m, s) in dataset_stats(com_vectors).items()
            }

    meta = {
        "config_hash": cfg.config_hash(),
        "seed": cfg.seed,
        "feature_set": cfg["feature_set"],
        "n_videos": len(records),
        "n_ok": len(features),
        "n_failed": len(failures),
        "dataset_stats": stats,
        "palette_reductions": [
            {"id": vf.id, "k_requested": vf.color.k_requested,
             "k_fitted": vf.color.k_fitted}
            for vf in features
            if vf.color.k_fitted < vf.color.k_requested
        ],
    }
    _dump_json(meta, paths["features_meta"])
    return paths


# ---------------------------------------------------------------------------
# Training and evaluation


def _read_features_csv(path: Path, header) -> tuple[list[str], dict[str, np.ndarray]]:
    if not path.is_file():
        raise MissingArtifactError(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        rows = list(reader)
    ids = [row["id"] for row in rows]
    columns = {
        name: np.array([float(row[name]) for row in rows])
        for name in header
        if name != "id"
    }
    return ids, columns


def _matrix(columns: dict[str, np.ndarray], names) -> np.ndarray:
    return np.column_stack([columns[n] for n in names]) if names else np.empty((0, 0))


def _fit_predict_regression(model_name: str, cfg: RunConfig, X_train, y_train):
    """Fit one regression model and return its predict(X) closure.

    SVR and the MLP train on standardized features and targets (the
    documented update rules assume commensurate scales); predictions are
    mapped back to the original target scale. The forest is scale
    invariant and trains on the raw values.
    """
    params = cfg["models"]
    x_scaler = scaler_fit(X_train)
    y_mean = float(np.mean(y_train))
    y_std = float(np.std(y_train)) or 1.0
    ys_train = (y_train - y_mean) / y_std

    if model_name == "svr":
        p = params["svr"]
        model = svr_fit(
            scaler_transform(x_scaler, X_train), ys_train,
            C=p["C"], epsilon=p["epsilon"], kernel=p["kernel"], gamma=p["gamma"],
        )
        return lambda X: svr_predict(model, scaler_transform(x_scaler, X)) * y_std + y_mean
    if model_name == "random_forest":
        p = params["forest"]
        model = forest_fit(
            X_train, y_train,
            n_trees=p["n_trees"], m=p["m"], seed=cfg.seed,
            max_depth=p["max_depth"], min_leaf=p["min_leaf"],
        )
        return lambda X: forest_predict(model, X)
    if model_name == "mlp":
        p = params["mlp"]
        model = mlp_fit(
            scaler_transform(x_scaler, X_train), ys_train,
            layer_sizes=tuple(p["layer_sizes"]), eta=p["eta"],
            max_iter=p["max_iter"], seed=cfg.seed, activation=p["activation"],
        )
        return lambda X: mlp_predict(model, scaler_transform(x_scaler, X)) * y_std + y_mean
    raise ValueError(f"unknown regression model {model_name!r}")


def cmd_train_eval(cfg: RunConfig) -> dict[str, Path]:
    """Fit the regression and classification experiments and emit metrics."""
    paths = artifact_paths(cfg)
    selected = _selected_sets(cfg)
    needed = [paths["raw_features"]] if "raw" in selected else []
    if "comments" in selected:
        needed.append(paths["comment_features"])
    if any(not p.is_file() for p in needed):
        cmd_features(cfg)

    loaded: dict[str, tuple[list[str], dict[str, np.ndarray]]] = {}
    if "raw" in selected:
        loaded["raw"] = _read_features_csv(paths["raw_features"], RAW_CSV_HEADER)
    if "comments" in selected:
        loaded["comments"] = _read_features_csv(
            paths["comment_features"], COMMENT_CSV_HEADER
        )

    n = len(next(iter(loaded.values()))[0])
    spec = SplitSpec(train_fraction=cfg["split"]["train_fraction"], seed=cfg.split_seed)
    train_idx, test_idx = split_indices(n, spec)
    if train_idx.size < 4:
        raise TooSmallError(
            f"need at least 4 training rows, got {train_idx.size} of {n}"
        )

    result: dict = {
        "config_hash": cfg.config_hash(),
        "seed": cfg.seed,
        "split": {
            "train_fraction": cfg["split"]["train_fraction"],
            "seed": cfg.split_seed,
            "n_train": int(train_idx.size),
            "n_test": int(test_idx.size),
        },
    }

    if "raw" in loaded:
        _, columns = loaded["raw"]
        X = _matrix(columns, RAW_FEATURE_COLUMNS)
        regression: dict = {}
        for target in cfg["regression_targets"]:
            y = columns[target]
            per_model: dict = {}
            predictors = {}
            for name in REGRESSION_MODELS:
                predict = _fit_predict_regression(name, cfg, X[train_idx], y[train_idx])
                predictors[name] = predict
                yhat = np.asarray(predict(X[test_idx]), dtype=float)
                per_model[name] = {
                    "mse": evalkit.mse(y[test_idx], yhat),
                    "rmse": evalkit.rmse(y[test_idx], yhat),
                    "mae": evalkit.mae(y[test_idx], yhat),
                }
            best = min(REGRESSION_MODELS, key=lambda m: per_model[m]["mse"])
            ranking = permutation_importance(
                predictors[best],
                X[test_idx],
                y[test_idx],
                metric=evalkit.mse,
                seed=cfg.seed,
                repeats=cfg["importance"]["repeats"],
                feature_names=RAW_FEATURE_COLUMNS,
            )
            regression[target] = {
                "models": per_model,
                "importance": {
                    "model": best,
                    "ranking": [[name, value] for name, value in ranking],
                },
            }
        result["regression"] = regression

    classification: dict = {}
    feature_names = {
        "raw": RAW_FEATURE_COLUMNS,
        "comments": COMMENT_FEATURE_COLUMNS,
    }
    models_dir = cfg.out_dir / "models"
    for fs in selected:
        _, columns = loaded[fs]
        X = _matrix(columns, feature_names[fs])
        y = columns["target"]
        scaler = scaler_fit(X[train_idx])
        ridge = ridge_fit(
            scaler_transform(scaler, X[train_idx]),
            y[train_idx],
            alpha=cfg["models"]["ridge"]["alpha"],
        )
        pred = ridge_predict(ridge, scaler_transform(scaler, X[test_idx]))
        cm = evalkit.ConfusionMatrix.from_labels(y[test_idx], pred)
        metrics = evalkit.classify_metrics(cm)
        classification[fs] = {
            "confusion": {"tp": cm.tp, "tn": cm.tn, "fp": cm.fp, "fn": cm.fn},
            "metrics": metrics.as_dict(),
        }
        models_dir.mkdir(parents=True, exist_ok=True)
        _dump_json(
            {
                "model_type": "scaled_ridge",
                "scaler": model_to_dict(scaler),
                "ridge": model_to_dict(ridge, feature_names=feature_names[fs]),
                "seed": cfg.seed,
            },
            models_dir / f"ridge_{fs}.json",
        )
    result["classification"] = classification

    _dump_json(result, paths["train_eval"])
    return paths


# ---------------------------------------------------------------------------
# Correlation

def cmd_correlate(cfg: RunConfig) -> dict[str, Path]:
    """Correlate each feature set against the popularity metrics."""
    paths = artifact_paths(cfg)
    selected = _selected_sets(cfg)
    blocks = {}
    out: dict = {"config_hash": cfg.config_hash(), "seed": cfg.seed}

    jobs = []
    if "raw" in selected:
        jobs.append(("raw", paths["raw_features"], RAW_CSV_HEADER,
                     RAW_FEATURE_COLUMNS, "raw_vs_popularity"))
    if "comments" in selected:
        jobs.append(("comments", paths["comment_features"], COMMENT_CSV_HEADER,
                     COMMENT_FEATURE_COLUMNS, "comments_vs_popularity"))

    for fs, path, header, feature_cols, stem in jobs:
        _, columns = _read_features_csv(path, header)
        rows = {name: columns[name] for name in feature_cols}
        cols = {name: columns[name] for name in POPULARITY_COLUMNS}
        row_names, col_names, r, flagged = evalkit.pearson_cross(rows, cols)
        csv_path = cfg.out_dir / f"{stem}.csv"
        csv_path.write_text(
            evalkit.correlation_csv(row_names, col_names, r), encoding="utf-8"
        )
        svg_path = cfg.out_dir / f"{stem}.svg"
        title = (
            "Raw features vs popularity metrics"
            if fs == "raw"
            else "Comment emotions vs popularity metrics"
        )
        svg_path.write_text(
            evalkit.correlation_svg(row_names, col_names, r, title=title) + "\n",
            encoding="utf-8",
        )
        blocks[fs] = {
            "features": list(row_names),
            "popularity_metrics": list(col_names),
            "r": [[float(v) for v in row] for row in r],
            "constant_columns": list(flagged),
        }
    out["blocks"] = blocks
    _dump_json(out, paths["correlations"])
    return paths


# ---------------------------------------------------------------------------
# Report


def _require(path: Path) -> Path:
    if not path.is_file():
        raise MissingArtifactError(path)
    return path


def _read_word_table(path: Path) -> list[list]:
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        return [
            [row["word"], int(row["count"]), float(row["weight"])] for row in reader
        ]


def cmd_report(cfg: RunConfig) -> dict[str, Path]:
    """Merge all stage artifacts into report.json plus a text summary."""
    paths = artifact_paths(cfg)
    selected = _selected_sets(cfg)

    meta = json.loads(_require(paths["features_meta"]).read_text(encoding="utf-8"))
    if "raw" in selected:
        _require(paths["raw_features"])
    if "comments" in selected:
        _require(paths["comment_features"])
    train = json.loads(_require(paths["train_eval"]).read_text(encoding="utf-8"))
    correlations = json.loads(
        _require(paths["correlations"]).read_text(encoding="utf-8")
    )
    failures = json.loads(_require(paths["failures"]).read_text(encoding="utf-8"))
    distributions = json.loads(
        _require(paths["emotion_distributions"]).read_text(encoding="utf-8")
    )

    word_tables = {}
    if "raw" in selected:
        word_tables["posts"] = _read_word_table(_require(paths["word_table_posts"]))
    if "comments" in selected:
        word_tables["comments"] = _read_word_table(
            _require(paths["word_table_comments"])
        )

    report = {
        "config_hash": cfg.config_hash(),
        "seed": cfg.seed,
        "feature_set": cfg["feature_set"],
        "dataset": {
            "n_videos": meta["n_videos"],
            "n_ok": meta["n_ok"],
            "n_failed": meta["n_failed"],
            "stats": meta["dataset_stats"],
            "palette_reductions": meta["palette_reductions"],
        },
        "split": train["split"],
        "regression": train.get("regression", {}),
        "classification": train["classification"],
        "correlations": correlations["blocks"],
        "word_tables": word_tables,
        "emotion_distributions": distributions,
        "failures": failures,
    }
    _dump_json(report, paths["report"])
    paths["summary"].write_text(_summary_text(report), encoding="utf-8")
    return paths


def _fmt(value, nd=2) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "n/a"
    return f"{value:.{nd}f}"


def _summary_text(report: dict) -> str:
    lines = []
    lines.append("ecovid run summary")
    lines.append("==================")
    lines.append(f"config hash : {report['config_hash']}")
    lines.append(f"seed        : {report['seed']}")
    ds = report["dataset"]
    lines.append(
        f"corpus      : {ds['n_videos']} videos ({ds['n_ok']} ok, "
        f"{ds['n_failed']} failed)"
    )
    lines.append("")

    regression = report.get("regression") or {}
    if regression:
        lines.append("Regression (held-out): per-day target, metrics by model")
        for target, block in regression.items():
            lines.append(f"  {target}")
            lines.append(f"    {'model':<14}{'MSE':>12}{'RMSE':>10}{'MAE':>10}")
            for model, metrics in block["models"].items():
                lines.append(
                    f"    {model:<14}{_fmt(metrics['mse']):>12}"
                    f"{_fmt(metrics['rmse']):>10}{_fmt(metrics['mae']):>10}"
                )
            top = block["importance"]["ranking"][0]
            lines.append(
                f"    top factor: {top[0]} (importance {_fmt(top[1], 4)}, "
                f"via {block['importance']['model']})"
            )
        lines.append("")

    classification = report.get("classification") or {}
    if classification:
        lines.append("Classification (ridge + scaler, held-out)")
        sets = list(classification.keys())
        lines.append("    " + f"{'metric':<12}" + "".join(f"{s:>12}" for s in sets))
        for metric in ("accuracy", "precision", "recall", "f1"):
            row = f"    {metric:<12}"
            for s in sets:
                row += f"{_fmt(classification[s]['metrics'][metric]):>12}"
            lines.append(row)
        lines.append("")

    for fs, block in (report.get("correlations") or {}).items():
        lines.append(f"Correlations ({fs} features vs popularity)")
        names = block["popularity_metrics"]
        lines.append("    " + f"{'feature':<24}" + "".join(f"{n:>14}" for n in names))
        for feature, row in zip(block["features"], block["r"]):
            text = f"    {feature:<24}"
            for v in row:
                text += f"{_fmt(v):>14}"
            lines.append(text)
        lines.append("")

    for group, table in (report.get("word_tables") or {}).items():
        top = ", ".join(f"{w} ({c})" for w, c, _ in table[:5]) or "(none)"
        lines.append(f"Top words in {group}: {top}")
    dists = report.get("emotion_distributions") or {}
    for group, counts in dists.items():
        parts = ", ".join(f"{name} {count}" for name, count in counts.items())
        lines.append(f"Dominant emotions in {group}: {parts}")
    if report["failures"]:
        lines.append("")
        lines.append("Failures:")
        for failure in report["failures"]:
            lines.append(f"  {failure['id']}: {failure['error']}")
    lines.append("")
    return "\n".join(lines)
