"""Masked-LM scoring contract and option scoring.

A ScorerBackend turns text into token ids, produces vocabulary-space scores
at a mask position, sequence embeddings, and gradient projections for
attribution.  On top of that contract this module scores the five options of
a sample (multi-token options average their per-token scores), converts raw
scores to probabilities, and averages checkpoint ensembles.

The placeholder word ``@placeholder`` marks the blank; every backend's
tokenizer maps it to the backend's mask token.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import EmptyOptionError, MalformedSampleError, ShapeError

PLACEHOLDER = "@placeholder"

CAP_TOKENIZE = "tokenize"
CAP_VOCAB_SCORES = "vocab_scores"
CAP_CLS_EMBEDDING = "cls_embedding"
CAP_IG_GRAD = "ig_grad_projection"


@dataclass(frozen=True)
class TokenizedText:
    """Token ids plus a token→word index map.

    ``word_offsets[i]`` is the index of the source word of token i and is
    non-decreasing.  ``mask_position`` is set when the text contained the
    placeholder.  ``words`` keeps the surface word list for display.
    """

    token_ids: tuple[int, ...]
    word_offsets: tuple[int, ...]
    mask_position: int | None = None
    words: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.token_ids) != len(self.word_offsets):
            raise ShapeError("token_ids and word_offsets lengths differ")
        if any(b < a for a, b in zip(self.word_offsets, self.word_offsets[1:])):
            raise ShapeError("word_offsets must be non-decreasing")
        if self.mask_position is not None and not (
            0 <= self.mask_position < len(self.token_ids)
        ):
            raise ShapeError(f"mask_position {self.mask_position} out of bounds")

    def __len__(self):
        return len(self.token_ids)


def slice_tokens(text: TokenizedText, start: int, end: int) -> TokenizedText:
    """Token slice [start, end) with word offsets rebased to the slice."""
    ids = text.token_ids[start:end]
    offs = text.word_offsets[start:end]
    if not offs:
        return TokenizedText((), (), None, ())
    base = offs[0]
    words = text.words[base : offs[-1] + 1] if text.words else ()
    mask = None
    if text.mask_position is not None and start <= text.mask_position < end:
        mask = text.mask_position - start
    return TokenizedText(tuple(ids), tuple(o - base for o in offs), mask, words)


def concat(a: TokenizedText, b: TokenizedText) -> TokenizedText:
    """Concatenate two tokenizations, shifting b's word offsets past a's."""
    shift = (a.word_offsets[-1] + 1) if a.word_offsets else len(a.words)
    mask = a.mask_position
    if b.mask_position is not None:
        mask = len(a.token_ids) + b.mask_position
    return TokenizedText(
        a.token_ids + b.token_ids,
        a.word_offsets + tuple(o + shift for o in b.word_offsets),
        mask,
        a.words + b.words,
    )


@dataclass(frozen=True)
class OptionScores:
    """Per-option raw scores and softmax probabilities at the mask."""

    raw: tuple[float, ...]
    probs: tuple[float, ...]
    trace: tuple[str, ...] = ()

    @classmethod
    def from_raw(cls, raw: Sequence[float], trace: Sequence[str] = ()) -> "OptionScores":
        return cls(tuple(float(r) for r in raw), softmax(raw), tuple(trace))

    def with_trace(self, *tags: str) -> "OptionScores":
        return replace(self, trace=self.trace + tags)


def softmax(raw: Sequence[float]) -> tuple[float, ...]:
    top = max(raw)
    exps = [math.exp(r - top) for r in raw]
    total = sum(exps)
    return tuple(e / total for e in exps)


class ScorerBackend(ABC):
    """Contract every scoring backend implements.

    Tokenization and scoring must be deterministic for fixed inputs.  Token
    ids returned by ``tokenize`` never include special tokens; backends that
    add markers at inference time report how many via ``special_token_count``
    so callers can budget sequence length.
    """

    capabilities: frozenset[str] = frozenset(
        {CAP_TOKENIZE, CAP_VOCAB_SCORES, CAP_CLS_EMBEDDING, CAP_IG_GRAD}
    )

    @property
    @abstractmethod
    def max_len(self) -> int: ...

    @property
    def special_token_count(self) -> int:
        return 3

    @property
    @abstractmethod
    def mask_token_id(self) -> int: ...

    @property
    @abstractmethod
    def pad_token_id(self) -> int: ...

    def supports(self, capability: str) -> bool:
        return capability in self.capabilities

    @abstractmethod
    def tokenize(self, text: str) -> TokenizedText: ...

    @abstractmethod
    def vocab_scores(
        self,
        token_ids: Sequence[int],
        mask_position: int,
        candidate_token_ids: Sequence[int],
    ) -> list[float]: ...

    @abstractmethod
    def cls_embedding(self, token_ids: Sequence[int]) -> list[float]: ...

    @abstractmethod
    def ig_grad_projection(
        self,
        token_ids: Sequence[int],
        mask_position: int,
        target_token_id: int,
        alpha: float,
    ) -> list[float]: ...

    @abstractmethod
    def ig_target_value(
        self, token_ids: Sequence[int], mask_position: int, target_token_id: int
    ) -> float:
        """Scalar the gradient projections differentiate, for completeness checks."""


def score_option(backend: ScorerBackend, context: TokenizedText, option: str) -> float:
    """Mean vocabulary-space score of the option's tokens at the mask."""
    if context.mask_position is None:
        raise MalformedSampleError("context has no mask position")
    option_ids = backend.tokenize(option.replace("_", " ")).token_ids
    if not option_ids:
        raise EmptyOptionError(f"option {option!r} tokenizes to nothing")
    scores = backend.vocab_scores(context.token_ids, context.mask_position, option_ids)
    return sum(scores) / len(scores)


def score_context(
    backend: ScorerBackend, context: TokenizedText, options: Sequence[str]
) -> OptionScores:
    return OptionScores.from_raw([score_option(backend, context, o) for o in options])


def build_context(
    backend: ScorerBackend, article: TokenizedText, question: TokenizedText
) -> TokenizedText:
    """(article ⊕ question) pair truncated to the backend's length budget.

    The question is kept whole (the blank lives there); the article tail is
    dropped when the pair would overflow.
    """
    if question.mask_position is None:
        raise MalformedSampleError("question has no placeholder")
    budget = backend.max_len - len(question) - backend.special_token_count
    if budget < 0:
        raise MalformedSampleError(
            f"question of {len(question)} tokens exceeds the length budget"
        )
    return concat(slice_tokens(article, 0, budget), question)


def score_sample(backend: ScorerBackend, sample) -> OptionScores:
    """Score a sample's five options over the truncated article/question pair."""
    question = backend.tokenize(sample.question)
    if question.mask_position is None:
        raise MalformedSampleError(f"sample {sample.id}: question has no placeholder")
    article = backend.tokenize(sample.article)
    context = build_context(backend, article, question)
    return score_context(backend, context, sample.options)


def ensemble_average(per_backend: Sequence[OptionScores]) -> OptionScores:
    """Average checkpoint predictions: elementwise mean of raw and of probs.

    The mean of probability vectors is itself a probability vector; the
    renormalization below only guards against float drift.
    """
    if len(per_backend) < 2:
        raise ShapeError("ensemble needs at least two score sets")
    n_opts = len(per_backend[0].raw)
    if any(len(s.raw) != n_opts for s in per_backend):
        raise ShapeError("ensemble inputs disagree on option count")
    n = len(per_backend)
    raw = tuple(sum(s.raw[i] for s in per_backend) / n for i in range(n_opts))
    probs = [sum(s.probs[i] for s in per_backend) / n for i in range(n_opts)]
    total = sum(probs)
    return OptionScores(raw, tuple(p / total for p in probs), ("ensemble",))
