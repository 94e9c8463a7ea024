"""13-dimensional concreteness-oriented word embeddings.

Each word maps to a fixed-order feature vector in which *every* dimension
grows with concreteness.  Features that correlate with abstractness (longer
words, more senses, more hyponyms, stronger positive/negative sentiment) are
inverted by subtracting from a shared large constant C; the rest (frequency,
objectivity, taxonomy depth) pass through directly.  Raw features are clipped
to [0, C] before orientation, so emitted values always land in [0, C].
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ShapeError
from .lexdb import LexicalDatabase

DIMENSIONS = (
    "length",
    "frequency",
    "num_senses",
    "hyponyms_mcs",
    "hyponyms_avg",
    "pos_mcs",
    "neg_mcs",
    "obj_mcs",
    "pos_avg",
    "neg_avg",
    "obj_avg",
    "depth_mcs",
    "depth_avg",
)

# Dimensions emitted as C - min(raw, C); the rest as min(raw, C).
INVERTED = frozenset({0, 2, 3, 4, 5, 6, 8, 9})

N_DIMS = len(DIMENSIONS)


@dataclass(frozen=True)
class FeatureConfig:
    """Orientation constant and out-of-vocabulary policy.

    ``default_embedding`` controls words with no senses at all: "oriented"
    runs the usual transform over their (mostly zero) raw features, "zeros"
    emits an all-zero vector that can never win a strict comparison.
    """

    large_value: float = 100.0
    default_embedding: str = "oriented"

    def __post_init__(self):
        if self.large_value <= 0:
            raise ValueError("large_value must be positive")
        if self.default_embedding not in ("oriented", "zeros"):
            raise ValueError(f"unknown OOV policy {self.default_embedding!r}")


@dataclass(frozen=True)
class LinguisticEmbedding:
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != N_DIMS:
            raise ShapeError(f"expected {N_DIMS} dimensions, got {len(self.values)}")

    def __getitem__(self, dim: int) -> float:
        return self.values[dim]


def _head_word(word: str) -> str:
    # Multiword phrases embed as their final word (head-noun heuristic).
    parts = word.split()
    return parts[-1] if parts else word


def raw_features(db: LexicalDatabase, word: str) -> list[float]:
    """Pre-orientation feature vector, ordered as in DIMENSIONS.

    Sense counts pool every part of speech; hyponym and depth features use
    noun senses only (the taxonomy is a noun structure); sentiment uses the
    pooled sense list.  Words with no senses get zeros for all sense-derived
    features.
    """
    word = _head_word(word)
    feats = [float(len(word)), float(db.freq(word))]

    pooled = db.senses(word)
    feats.append(float(len(pooled)))

    noun_senses = db.senses(word, "n")
    if noun_senses:
        counts = [float(len(s.hyponym_ids)) for s in noun_senses]
        feats.append(counts[0])
        feats.append(sum(counts) / len(counts))
    else:
        feats.extend([0.0, 0.0])

    if pooled:
        scores = [db.senti_scores(s.id) for s in pooled]
        mcs = scores[0]
        n = len(scores)
        feats.extend([mcs.pos, mcs.neg, mcs.obj])
        feats.extend(
            [
                sum(s.pos for s in scores) / n,
                sum(s.neg for s in scores) / n,
                sum(s.obj for s in scores) / n,
            ]
        )
    else:
        feats.extend([0.0] * 6)

    if noun_senses:
        depths = [float(db.depth(s.id)) for s in noun_senses]
        feats.append(depths[0])
        feats.append(sum(depths) / len(depths))
    else:
        feats.extend([0.0, 0.0])

    assert len(feats) == N_DIMS
    return feats


def embed(
    db: LexicalDatabase, word: str, config: FeatureConfig = FeatureConfig()
) -> LinguisticEmbedding:
    """Orient raw features so every dimension is proportional to concreteness."""
    if config.default_embedding == "zeros" and not db.senses(_head_word(word)):
        return LinguisticEmbedding((0.0,) * N_DIMS)
    c = config.large_value
    values = []
    for dim, raw in enumerate(raw_features(db, word)):
        clipped = min(max(raw, 0.0), c)
        values.append(c - clipped if dim in INVERTED else clipped)
    return LinguisticEmbedding(tuple(values))


def concreteness_vote(a: LinguisticEmbedding, b: LinguisticEmbedding) -> int:
    """Number of dimensions where ``b`` is strictly below ``a``."""
    return sum(1 for x, y in zip(a.values, b.values) if y < x)
