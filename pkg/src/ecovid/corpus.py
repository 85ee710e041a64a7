"""Corpus ingestion, per-day engagement metrics, popularity labels, splits.

A corpus is a list of :class:`VideoRecord`. Engagement counts are normalized
to events/day since upload, popularity is a median threshold over the
per-day likes and views, and train/test splits are seeded shuffles.
"""

from __future__ import annotations

import csv
import json
import statistics
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

import numpy as np

from .errors import (
    DateOrderError,
    EmptyCorpusError,
    IoError,
    SchemaError,
    ShapeError,
    TooSmallError,
)

CSV_COLUMNS = (
    "id",
    "upload_date",
    "collected_date",
    "likes",
    "views",
    "comments_count",
    "shares",
    "post_text",
    "frames_dir",
    "comments_file",
)

# accepted on top of the mandatory columns; seconds, used as the duration
# feature when present (frames cannot carry a timebase)
OPTIONAL_COLUMNS = ("duration",)

COUNT_FIELDS = ("likes", "views", "comments_count", "shares")


@dataclass(frozen=True)
class VideoRecord:
    id: str
    upload_date: date
    collected_date: date
    likes: int
    views: int
    comments_count: int
    shares: int
    post_text: str
    comment_texts: tuple[str, ...]
    frames_dir: Path
    duration: float | None = None


@dataclass(frozen=True)
class EngagementPerDay:
    likes_pd: float
    views_pd: float
    comments_pd: float
    shares_pd: float
    days: int


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.7
    seed: int = 0


def _parse_date(value: str, row: int, column: str) -> date:
    try:
        return date.fromisoformat(value.strip())
    except ValueError:
        raise SchemaError(f"{column} {value!r} is not an ISO-8601 date", row=row)


def _parse_count(value: str, row: int, column: str) -> int:
    try:
        n = int(str(value).strip())
    except (TypeError, ValueError):
        raise SchemaError(f"{column} {value!r} is not an integer", row=row)
    if n < 0:
        raise SchemaError(f"{column} must be >= 0, got {n}", row=row)
    return n


def _read_comments(path: Path, row: int) -> tuple[str, ...]:
    if not path.is_file():
        raise SchemaError(f"comments_file {path} does not exist", row=row)
    lines = path.read_text(encoding="utf-8").splitlines()
    return tuple(line for line in lines if line.strip())


def _record_from_row(raw: dict, row: int, base_dir: Path, seen_ids: set) -> VideoRecord:
    missing = [c for c in CSV_COLUMNS if raw.get(c) is None]
    if missing:
        raise SchemaError(f"missing columns {missing}", row=row)
    vid = str(raw["id"]).strip()
    if not vid:
        raise SchemaError("empty id", row=row)
    if vid in seen_ids:
        raise SchemaError(f"duplicate id {vid!r}", row=row)
    seen_ids.add(vid)

    upload = _parse_date(str(raw["upload_date"]), row, "upload_date")
    collected = _parse_date(str(raw["collected_date"]), row, "collected_date")
    if collected < upload:
        raise SchemaError(
            f"collected_date {collected} precedes upload_date {upload}", row=row
        )
    counts = {c: _parse_count(raw[c], row, c) for c in COUNT_FIELDS}

    comments: tuple[str, ...] = ()
    comments_ref = str(raw["comments_file"] or "").strip()
    if comments_ref:
        comments = _read_comments(base_dir / comments_ref, row)

    duration = None
    if raw.get("duration") not in (None, ""):
        try:
            duration = float(raw["duration"])
        except (TypeError, ValueError):
            raise SchemaError(f"duration {raw['duration']!r} is not a number", row=row)
        if duration < 0:
            raise SchemaError(f"duration must be >= 0, got {duration}", row=row)

    return VideoRecord(
        id=vid,
        upload_date=upload,
        collected_date=collected,
        likes=counts["likes"],
        views=counts["views"],
        comments_count=counts["comments_count"],
        shares=counts["shares"],
        post_text=str(raw["post_text"]),
        comment_texts=comments,
        frames_dir=base_dir / str(raw["frames_dir"]).strip(),
        duration=duration,
    )


def load_corpus(path: str | Path, format: str = "csv") -> list[VideoRecord]:
    """Load the corpus file, one VideoRecord per row, order preserved.

    Relative ``frames_dir`` and ``comments_file`` entries are resolved
    against the corpus file's directory.
    """
    path = Path(path)
    if format not in ("csv", "json"):
        raise ValueError(f"unknown corpus format {format!r}")
    if not path.is_file():
        raise IoError(f"corpus file not found: {path}")
    base_dir = path.parent
    seen: set[str] = set()
    records: list[VideoRecord] = []

    if format == "csv":
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            missing = [c for c in CSV_COLUMNS if c not in header]
            if missing:
                raise SchemaError(f"header missing columns {missing}", row=0)
            for i, raw in enumerate(reader, start=1):
                records.append(_record_from_row(raw, i, base_dir, seen))
    else:
        try:
            rows = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON corpus: {exc}", row=None)
        if not isinstance(rows, list):
            raise SchemaError("JSON corpus must be an array of objects", row=None)
        for i, raw in enumerate(rows, start=1):
            if not isinstance(raw, dict):
                raise SchemaError("corpus entry is not an object", row=i)
            records.append(_record_from_row(raw, i, base_dir, seen))
    return records


def per_day(record: VideoRecord) -> EngagementPerDay:
    """Normalize raw engagement counts to events/day since upload.

    ``days`` is floored at 1 so same-day collection never divides by zero.
    """
    delta = (record.collected_date - record.upload_date).days
    if delta < 0:
        raise DateOrderError(
            f"video {record.id}: collected {record.collected_date} "
            f"precedes upload {record.upload_date}"
        )
    days = max(1, delta)
    return EngagementPerDay(
        likes_pd=record.likes / days,
        views_pd=record.views / days,
        comments_pd=record.comments_count / days,
        shares_pd=record.shares / days,
        days=days,
    )


def label_popularity(
    corpus_pd: list[EngagementPerDay], combine: str = "and"
) -> list[int]:
    """Label each video 1 (popular) or 0 by the corpus median thresholds.

    A video is popular when its per-day likes and views both strictly exceed
    the corpus medians; ``combine="or"`` relaxes that to either metric.
    """
    if not corpus_pd:
        raise EmptyCorpusError("cannot label an empty corpus")
    if combine not in ("and", "or"):
        raise ValueError(f"combine must be 'and' or 'or', got {combine!r}")
    median_likes = statistics.median(e.likes_pd for e in corpus_pd)
    median_views = statistics.median(e.views_pd for e in corpus_pd)
    labels = []
    for e in corpus_pd:
        hits = (e.likes_pd > median_likes, e.views_pd > median_views)
        labels.append(int(all(hits) if combine == "and" else any(hits)))
    return labels


def split(corpus: list, spec: SplitSpec) -> tuple[list, list]:
    """Seeded shuffle-then-cut split; |train| = round(n * train_fraction)."""
    n = len(corpus)
    if n < 2:
        raise TooSmallError(f"need at least 2 records to split, got {n}")
    if not 0.0 < spec.train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0,1), got {spec.train_fraction}")
    perm = np.random.default_rng(spec.seed).permutation(n)
    cut = int(np.floor(n * spec.train_fraction + 0.5))  # round half up
    train = [corpus[i] for i in perm[:cut]]
    test = [corpus[i] for i in perm[cut:]]
    return train, test


def split_indices(n: int, spec: SplitSpec) -> tuple[np.ndarray, np.ndarray]:
    """Index form of :func:`split`, for slicing parallel feature matrices."""
    train, test = split(list(range(n)), spec)
    return np.asarray(train, dtype=int), np.asarray(test, dtype=int)


def dataset_stats(features: list[dict[str, float]]) -> dict[str, tuple[float, float]]:
    """Per-feature (mean, population std) over a list of feature mappings."""
    if not features:
        raise EmptyCorpusError("cannot compute stats of an empty feature list")
    names = list(features[0].keys())
    for i, vec in enumerate(features):
        if set(vec.keys()) != set(names):
            raise ShapeError(f"feature vector {i} names differ from the first")
    stats = {}
    for name in names:
        col = np.asarray([vec[name] for vec in features], dtype=float)
        stats[name] = (float(col.mean()), float(col.std()))  # std divides by n
    return stats
