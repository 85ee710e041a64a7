"""Synthetic corpora for demos and deterministic experiments.

``make_demo_corpus`` writes a small but fully-formed corpus to disk (CSV,
comment files, PPM frames) so the pipeline can run end to end without real
data. ``make_popularity_experiment`` generates paired raw/comment feature
matrices whose popularity label is driven by the comment-emotion variables
plus noise, for ordering experiments between the two feature sets.
"""

from __future__ import annotations

import csv
import io
from datetime import date, timedelta
from pathlib import Path

import numpy as np

from .corpus import CSV_COLUMNS
from .pipeline import COMMENT_FEATURE_COLUMNS, RAW_FEATURE_COLUMNS

_POST_WORDS = (
    "climate", "change", "plastic", "pollution", "ocean", "planet", "earth",
    "people", "us", "act", "future", "nature", "forest", "water", "air",
    "save", "protect", "waste", "recycle", "energy", "the", "a", "as",
    "fear", "danger", "disaster", "hope", "love", "sad", "angry", "happy",
    "shocking", "terrifying", "beautiful", "wonderful", "crisis", "threat",
)

_COMMENT_WORDS = (
    "wow", "shocking", "sad", "terrifying", "scary", "love", "beautiful",
    "happy", "angry", "outraged", "crying", "hope", "great", "awful",
    "this", "is", "so", "we", "must", "act", "now", "not", "good", "bad",
    "climate", "earth", "please", "share",
)

_EMOJIS = ("\U0001F30D", "\U0001F622", "\U0001F525", "⚠", "\U0001F622")


def write_ppm(path: Path, pixels: np.ndarray) -> None:
    """Write an (h, w, 3) uint8 array as binary PPM."""
    pixels = np.asarray(pixels, dtype=np.uint8)
    h, w, _ = pixels.shape
    header = f"P6\n{w} {h}\n255\n".encode("ascii")
    path.write_bytes(header + pixels.tobytes())


def make_demo_corpus(
    root: str | Path,
    n_videos: int = 10,
    seed: int = 7,
    frames_per_video: int = 2,
    frame_size: tuple[int, int] = (12, 16),
) -> Path:
    """Write a synthetic corpus under ``root``; returns the corpus CSV path."""
    root = Path(root)
    (root / "comments").mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    h, w = frame_size
    rows = []
    for i in range(n_videos):
        vid = f"v{i:03d}"
        frames_dir = root / "frames" / vid
        frames_dir.mkdir(parents=True, exist_ok=True)
        base_color = rng.integers(0, 256, size=3)
        for j in range(frames_per_video):
            noise = rng.integers(-12, 13, size=(h, w, 3))
            pixels = np.clip(base_color + noise, 0, 255).astype(np.uint8)
            write_ppm(frames_dir / f"f{j:02d}.ppm", pixels)

        n_words = int(rng.integers(4, 16))
        words = list(rng.choice(_POST_WORDS, size=n_words))
        post = " ".join(words)
        if rng.random() < 0.6:
            post += " " + "".join(rng.choice(_EMOJIS, size=int(rng.integers(1, 4))))

        n_comments = int(rng.integers(0, 5))
        comment_lines = [
            " ".join(rng.choice(_COMMENT_WORDS, size=int(rng.integers(2, 8))))
            for _ in range(n_comments)
        ]
        comments_rel = f"comments/{vid}.txt"
        (root / comments_rel).write_text(
            "\n".join(comment_lines) + ("\n" if comment_lines else ""),
            encoding="utf-8",
        )

        upload = date(2024, 1, 1) + timedelta(days=int(rng.integers(0, 60)))
        collected = upload + timedelta(days=int(rng.integers(1, 45)))
        views = int(rng.integers(500, 100_000))
        likes = int(views * rng.uniform(0.01, 0.08))
        rows.append(
            {
                "id": vid,
                "upload_date": upload.isoformat(),
                "collected_date": collected.isoformat(),
                "likes": likes,
                "views": views,
                "comments_count": n_comments,
                "shares": int(likes * rng.uniform(0.05, 0.4)),
                "post_text": post,
                "frames_dir": f"frames/{vid}",
                "comments_file": comments_rel if comment_lines else "",
                "duration": round(float(rng.uniform(5, 180)), 1),
            }
        )

    buf = io.StringIO()
    writer = csv.DictWriter(
        buf, fieldnames=list(CSV_COLUMNS) + ["duration"], lineterminator="\n"
    )
    writer.writeheader()
    writer.writerows(rows)
    corpus_path = root / "corpus.csv"
    corpus_path.write_text(buf.getvalue(), encoding="utf-8")
    return corpus_path


def make_popularity_experiment(
    n: int = 50, seed: int = 0
) -> tuple[dict[str, np.ndarray], dict[str, np.ndarray], np.ndarray]:
    """Feature matrices where comment emotions carry the popularity signal.

    Returns (raw_columns, comment_columns, labels). Raw features are
    independent noise in realistic ranges; the binary label thresholds a
    linear score of the comment-emotion fractions and sentiment plus
    Gaussian noise at its median, so a comment-feature classifier can
    learn it and a raw-feature classifier cannot.
    """
    rng = np.random.default_rng(seed)

    counts = rng.dirichlet(np.ones(5) * 0.8, size=n)
    happy, angry, surprise, sad, fear = counts.T
    sentiment = np.clip(
        0.9 * happy + 0.4 * surprise - 0.7 * sad - 0.8 * fear - 0.6 * angry
        + rng.normal(0.0, 0.15, size=n),
        -1.0,
        1.0,
    )
    score = (
        2.0 * happy
        + 1.2 * surprise
        - 1.0 * sad
        - 1.4 * fear
        - 0.8 * angry
        + 1.0 * sentiment
        + rng.normal(0.0, 0.35, size=n)
    )
    labels = (score > np.median(score)).astype(int)

    comment_columns = dict(
        zip(COMMENT_FEATURE_COLUMNS, [happy, angry, surprise, sad, fear, sentiment])
    )

    raw_columns = {
        "duration": rng.uniform(5, 200, size=n),
        "post_length": rng.integers(10, 600, size=n).astype(float),
        "post_emotion_happy": rng.dirichlet(np.ones(5), size=n)[:, 0],
        "post_emotion_angry": rng.dirichlet(np.ones(5), size=n)[:, 1],
        "post_emotion_surprise": rng.dirichlet(np.ones(5), size=n)[:, 2],
        "post_emotion_sad": rng.dirichlet(np.ones(5), size=n)[:, 3],
        "post_emotion_fear": rng.dirichlet(np.ones(5), size=n)[:, 4],
        "post_sentiment": rng.uniform(-1, 1, size=n),
        "mean_intensity": rng.uniform(0, 255, size=n),
        "mean_hue": rng.uniform(0, 180, size=n),
        "mean_saturation": rng.uniform(0, 255, size=n),
        "emoji_count": rng.integers(0, 8, size=n).astype(float),
    }
    assert tuple(raw_columns.keys()) == RAW_FEATURE_COLUMNS
    return raw_columns, comment_columns, labels
