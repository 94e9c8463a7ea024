"""Decision improvement on top of raw option scores.

Two confidence triggers gate everything: the *difference* trigger fires when
the top-2 probability gap is small, the *threshold* trigger when the top
probability itself is low.  When a trigger fires, either the linguistic
flip (compare the top two options' concreteness embeddings dimension by
dimension and switch to the runner-up on a majority) or the hyponym expansion
(rescore each option as the max over itself and its hyponym lemmas) revises
the answer.  Chunk voting — the weighted logit sum over a ChunkSet — also
lives here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .chunker import ChunkSet
from .errors import ShapeError
from .lexdb import LexicalDatabase
from .lingfeat import FeatureConfig, concreteness_vote, embed
from .scorer import (
    OptionScores,
    ScorerBackend,
    TokenizedText,
    score_option,
    softmax,
)

TRIGGER_DIFFERENCE = "difference"
TRIGGER_THRESHOLD = "threshold"
TAG_FLIP = "flip"
TAG_HYPONYM = "hyponym"


@dataclass(frozen=True)
class RerankConfig:
    diff_threshold: float = 0.1
    prob_threshold: float = 0.5
    majority: int = 7
    hyponym_depth: int = 1

    def __post_init__(self):
        if not 1 <= self.majority <= 13:
            raise ValueError(f"majority must be in [1, 13], got {self.majority}")
        if self.hyponym_depth < 1:
            raise ValueError("hyponym_depth must be >= 1")


@dataclass(frozen=True)
class Prediction:
    """Final answer for one sample.

    ``chosen`` is the argmax of ``probs`` unless a flip method fired, in
    which case ``flipped_from`` records the pre-flip argmax.
    """

    chosen: int
    probs: tuple[float, ...]
    fired: tuple[str, ...] = ()
    flipped_from: int | None = None


def argmax(values: Sequence[float]) -> int:
    return max(range(len(values)), key=lambda i: values[i])


def vote_aggregate(
    per_chunk: Sequence[OptionScores], weights: ChunkSet
) -> OptionScores:
    """Weighted sum of per-chunk logits under the normalized chunk weights."""
    if len(per_chunk) != len(weights):
        raise ShapeError(
            f"{len(per_chunk)} score sets for {len(weights)} chunks"
        )
    n_opts = len(per_chunk[0].raw)
    raw = [0.0] * n_opts
    for scores, chunk in zip(per_chunk, weights):
        if chunk.weight_norm is None:
            raise ShapeError("vote_aggregate needs normalized weights")
        if len(scores.raw) != n_opts:
            raise ShapeError("per-chunk score sets disagree on option count")
        for i in range(n_opts):
            raw[i] += chunk.weight_norm * scores.raw[i]
    return OptionScores.from_raw(raw, trace=("vote",))


def trigger_difference(probs: Sequence[float], cfg: RerankConfig) -> bool:
    """True when the top-2 probability gap is below the threshold."""
    ranked = sorted(probs, reverse=True)
    return (ranked[0] - ranked[1]) < cfg.diff_threshold


def trigger_threshold(probs: Sequence[float], cfg: RerankConfig) -> bool:
    """True when the winning probability itself is below the threshold."""
    return max(probs) < cfg.prob_threshold


_TRIGGERS = {
    TRIGGER_DIFFERENCE: trigger_difference,
    TRIGGER_THRESHOLD: trigger_threshold,
}


def _top_two(probs: Sequence[float]) -> tuple[int, int]:
    order = sorted(range(len(probs)), key=lambda i: (-probs[i], i))
    return order[0], order[1]


def should_flip(first_emb, second_emb, majority: int) -> bool:
    """Majority rule: the runner-up wins when it sits strictly below the
    leader on at least ``majority`` of the embedding dimensions."""
    return concreteness_vote(first_emb, second_emb) >= majority


def difference_method(
    db: LexicalDatabase,
    probs: Sequence[float],
    options: Sequence[str],
    cfg: RerankConfig,
    feature_cfg: FeatureConfig = FeatureConfig(),
    trigger: str = TRIGGER_DIFFERENCE,
) -> Prediction:
    """Switch to the runner-up when it wins on enough embedding dimensions.

    With the default trigger this fires on a small top-2 probability gap;
    ``trigger="threshold"`` gates the same flip on absolute confidence.
    """
    probs = tuple(probs)
    first, second = _top_two(probs)
    if not _TRIGGERS[trigger](probs, cfg):
        return Prediction(first, probs)
    first_emb = embed(db, options[first], feature_cfg)
    second_emb = embed(db, options[second], feature_cfg)
    if should_flip(first_emb, second_emb, cfg.majority):
        return Prediction(second, probs, (trigger, TAG_FLIP), flipped_from=first)
    return Prediction(first, probs, (trigger,))


def hyponym_candidates(
    db: LexicalDatabase, option: str, depth: int = 1
) -> list[str]:
    """The option itself plus hyponym lemmas of its noun senses.

    ``depth`` levels of the hyponym relation are walked (1 = immediate
    hyponyms).  Lemmas keep source order and are deduplicated; underscores
    become spaces so candidates tokenize like surface text.
    """
    candidates: dict[str, None] = {option: None}
    frontier = [s.id for s in db.senses(option, "n")]
    for _ in range(depth):
        next_frontier = []
        for sid in frontier:
            for hypo in db.hyponyms(sid):
                next_frontier.append(hypo.id)
                for lemma in hypo.lemmas:
                    candidates.setdefault(lemma.replace("_", " "), None)
        frontier = next_frontier
    return list(candidates)


def hyponym_rescore(
    db: LexicalDatabase,
    backend: ScorerBackend,
    context: TokenizedText,
    options: Sequence[str],
    cfg: RerankConfig,
) -> list[float]:
    """New raw score per option: the max over the option and its hyponyms."""
    return [
        max(
            score_option(backend, context, candidate)
            for candidate in hyponym_candidates(db, option, cfg.hyponym_depth)
        )
        for option in options
    ]


def hyponym_options_method(
    db: LexicalDatabase,
    backend: ScorerBackend,
    context: TokenizedText,
    options: Sequence[str],
    probs: Sequence[float],
    cfg: RerankConfig,
    trigger: str = TRIGGER_DIFFERENCE,
) -> Prediction:
    """Re-take the argmax after hyponym expansion, if the trigger fires.

    Every option's score becomes the max over itself and its hyponym lemmas;
    options without noun senses keep their own score.
    """
    probs = tuple(probs)
    first = argmax(probs)
    if not _TRIGGERS[trigger](probs, cfg):
        return Prediction(first, probs)
    new_raw = hyponym_rescore(db, backend, context, options, cfg)
    new_probs = softmax(new_raw)
    chosen = argmax(new_raw)
    return Prediction(
        chosen,
        new_probs,
        (trigger, TAG_HYPONYM),
        flipped_from=first if chosen != first else None,
    )
