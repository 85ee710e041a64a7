"""Lexicon-based sentiment and five-emotion scoring.

Sentiment is a compact valence-lexicon scorer: sum the valences of lexicon
hits, flip a hit by -0.74 when the preceding token negates it, and squash
the sum with s/sqrt(s^2+15). Booster words, punctuation amplification and
caps emphasis are deliberately not implemented; scores therefore match the
documented subset, not the full VADER heuristic set.

Emotions are single-label word counts over {happy, angry, surprise, sad,
fear}, normalized to fractions; a text with no matches is all zeros and is
treated as neutral by the ordinal mapping.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import TYPE_CHECKING

from .errors import IoError, SchemaError
from .textprep import clean, tokenize

if TYPE_CHECKING:
    from .corpus import VideoRecord

EMOTIONS = ("happy", "angry", "surprise", "sad", "fear")

# Ordinal encoding of the dominant emotion: Angry -3 ... Happy +2,
# with Neutral 0 reserved for the all-zero profile.
EMOTION_ORDINALS = {
    "angry": -3,
    "fear": -2,
    "sad": -1,
    "neutral": 0,
    "surprise": 1,
    "happy": 2,
}

# Tie-breaking order for the dominant emotion: most negative ordinal first.
_TIE_ORDER = ("angry", "fear", "sad", "surprise", "happy")

NEGATORS = frozenset({"not", "no", "never", "n't"})
NEGATION_FACTOR = -0.74
_NORMALIZATION = 15.0


@dataclass(frozen=True)
class EmotionProfile:
    happy: float = 0.0
    angry: float = 0.0
    surprise: float = 0.0
    sad: float = 0.0
    fear: float = 0.0

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in EMOTIONS}

    def total(self) -> float:
        return sum(self.as_dict().values())


def load_valence_lexicon(path: str | Path | None = None) -> dict[str, float]:
    """Load a token<TAB>valence lexicon; extra columns are ignored.

    The layout is compatible with the published VADER lexicon file. With no
    path, a compact packaged default is used.
    """
    if path is None:
        text = resources.files("ecovid.data").joinpath("valence.tsv").read_text("utf-8")
    else:
        path = Path(path)
        if not path.is_file():
            raise IoError(f"valence lexicon not found: {path}")
        text = path.read_text(encoding="utf-8")
    lexicon: dict[str, float] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 2:
            raise SchemaError("expected token<TAB>valence", row=lineno)
        try:
            lexicon[parts[0].strip().lower()] = float(parts[1])
        except ValueError:
            raise SchemaError(f"valence {parts[1]!r} is not a number", row=lineno)
    return lexicon


def load_emotion_lexicon(path: str | Path | None = None) -> dict[str, str]:
    """Load a word,emotion CSV mapping each word to one of the five emotions."""
    if path is None:
        text = resources.files("ecovid.data").joinpath("emotions.csv").read_text("utf-8")
    else:
        path = Path(path)
        if not path.is_file():
            raise IoError(f"emotion lexicon not found: {path}")
        text = path.read_text(encoding="utf-8")
    lexicon: dict[str, str] = {}
    for lineno, row in enumerate(csv.reader(text.splitlines()), start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if row[0].strip().startswith("#"):
            continue
        if len(row) != 2:
            raise SchemaError(f"expected word,emotion, got {row!r}", row=lineno)
        word, emotion = row[0].strip().lower(), row[1].strip().lower()
        if emotion not in EMOTIONS:
            raise SchemaError(f"unknown emotion {row[1]!r}", row=lineno)
        lexicon[word] = emotion
    return lexicon


def sentiment(tokens: list[str], lexicon: dict[str, float]) -> float:
    """Compound sentiment of a token list, in [-1, 1].

    s = sum of lexicon valences (negated hits scaled by -0.74), then
    s/sqrt(s^2+15) clamped to [-1, 1]. Empty or lexicon-free text scores 0.
    """
    s = 0.0
    for i, tok in enumerate(tokens):
        valence = lexicon.get(tok)
        if valence is None:
            continue
        if i > 0 and tokens[i - 1] in NEGATORS:
            valence *= NEGATION_FACTOR
        s += valence
    if s == 0.0:
        return 0.0
    compound = s / math.sqrt(s * s + _NORMALIZATION)
    return max(-1.0, min(1.0, compound))


def emotions(tokens: list[str], emo_lexicon: dict[str, str]) -> EmotionProfile:
    """Fraction of lexicon matches per emotion; all zeros when nothing matched."""
    counts = dict.fromkeys(EMOTIONS, 0)
    for tok in tokens:
        emotion = emo_lexicon.get(tok)
        if emotion is not None:
            counts[emotion] += 1
    total = sum(counts.values())
    if total == 0:
        return EmotionProfile()
    return EmotionProfile(**{name: counts[name] / total for name in EMOTIONS})


def dominant_ordinal(profile: EmotionProfile) -> int:
    """Ordinal of the argmax emotion; all-zero profiles are Neutral (0).

    Ties resolve to the most negative ordinal (angry before fear before sad
    before surprise before happy).
    """
    if profile.total() == 0.0:
        return EMOTION_ORDINALS["neutral"]
    best = max(_TIE_ORDER, key=lambda name: (getattr(profile, name),
                                             -_TIE_ORDER.index(name)))
    return EMOTION_ORDINALS[best]


def text_affect(
    text: str, valence_lexicon: dict[str, float], emo_lexicon: dict[str, str]
) -> tuple[EmotionProfile, float]:
    """Clean and tokenize raw text, then score emotions and sentiment.

    Stopwords are kept on purpose: negators would otherwise be removed
    before the sentiment pass sees them.
    """
    tokens = tokenize(clean(text))
    return emotions(tokens, emo_lexicon), sentiment(tokens, valence_lexicon)


def comment_affect(
    record: "VideoRecord",
    valence_lexicon: dict[str, float],
    emo_lexicon: dict[str, str],
) -> tuple[EmotionProfile, float]:
    """Affect of a video's comments, scored over their concatenation.

    An empty comment list yields a neutral profile and compound 0.
    """
    return text_affect(" ".join(record.comment_texts), valence_lexicon, emo_lexicon)
