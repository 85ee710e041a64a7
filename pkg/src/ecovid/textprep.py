"""Text cleaning, tokenization, stopword removal, emoji counts, word tables."""

from __future__ import annotations

import unicodedata
from collections import Counter
from importlib import resources
from pathlib import Path
from typing import Iterable, NamedTuple

from .errors import IoError

# Code-point ranges treated as emoji; ZWJ-joined sequences count as one.
EMOJI_RANGES = ((0x1F300, 0x1FAFF), (0x2600, 0x27BF))
_ZWJ = 0x200D
_VS16 = 0xFE0F

_URL_PREFIXES = ("http://", "https://", "www.")


def _is_emoji_cp(cp: int) -> bool:
    return any(lo <= cp <= hi for lo, hi in EMOJI_RANGES)


def clean(text: str) -> str:
    """Strip URLs and special characters, lowercase, collapse whitespace.

    URL tokens are dropped whole; hyphens become spaces so compound words
    split instead of gluing; every remaining character outside
    letters/digits/whitespace/emoji is removed. Idempotent.
    """
    kept_tokens = [
        tok for tok in text.split() if not tok.lower().startswith(_URL_PREFIXES)
    ]
    out = []
    for ch in " ".join(kept_tokens):
        if ch == "-" or unicodedata.category(ch) == "Pd":
            out.append(" ")
        elif ch.isalnum() or ch.isspace() or _is_emoji_cp(ord(ch)):
            out.append(ch)
    return " ".join("".join(out).lower().split())


def tokenize(text: str) -> list[str]:
    """Whitespace split of already-cleaned text; empty tokens dropped."""
    return text.split()


def remove_stopwords(tokens: list[str], stoplist: set[str]) -> list[str]:
    """Order-preserving filter of stopwords."""
    return [t for t in tokens if t not in stoplist]


def count_emoji(text: str) -> int:
    """Count emoji in raw text; a ZWJ-joined sequence counts as one emoji.

    Variation selectors are transparent, so "❤️‍🔥" style sequences still
    collapse to a single emoji.
    """
    count = 0
    joins = 0
    last_was_emoji = False
    pending_join = False
    for ch in text:
        cp = ord(ch)
        if cp == _VS16:
            continue
        if cp == _ZWJ:
            pending_join = last_was_emoji
            continue
        is_emoji = _is_emoji_cp(cp)
        if is_emoji:
            count += 1
            if pending_join:
                joins += 1
        last_was_emoji = is_emoji
        pending_join = False
    return count - joins


class WordEntry(NamedTuple):
    word: str
    count: int
    weight: float


def word_table(docs: Iterable[list[str]], top_k: int) -> list[WordEntry]:
    """Aggregate token counts across docs and keep the top_k words.

    Sorted by count descending, ties lexicographic ascending; weight is
    count / max count so the top entry always has weight 1.
    """
    if top_k < 1:
        raise ValueError(f"top_k must be >= 1, got {top_k}")
    counts = Counter()
    for doc in docs:
        counts.update(doc)
    if not counts:
        return []
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:top_k]
    max_count = ordered[0][1]
    return [WordEntry(w, c, c / max_count) for w, c in ordered]


def load_stopwords(path: str | Path | None = None) -> set[str]:
    """Load a stopword file (one lowercase token per line, '#' comments).

    With no path, the packaged default English list is used.
    """
    if path is None:
        text = resources.files("ecovid.data").joinpath("stopwords.txt").read_text("utf-8")
    else:
        path = Path(path)
        if not path.is_file():
            raise IoError(f"stopword file not found: {path}")
        text = path.read_text(encoding="utf-8")
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return words
