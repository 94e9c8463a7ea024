"""Overlapping article chunks and their voting weights.

A long article is cut into chunks that each fit the backend's length budget
alongside the question.  Consecutive chunks overlap by exactly ``stride``
tokens so no context is lost at a boundary.  Each (chunk, question) pair then
gets a weight — either the fraction of the chunk's token types shared with
the question, or the cosine similarity of their sequence embeddings — and the
weights are normalized into a probability vector for logit voting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import ChunkingError, QuestionOverflowError
from .scorer import ScorerBackend, TokenizedText


@dataclass(frozen=True)
class Chunk:
    token_span: tuple[int, int]
    tokens: tuple[int, ...]
    weight_raw: float | None = None
    weight_norm: float | None = None

    def __len__(self):
        return self.token_span[1] - self.token_span[0]


@dataclass(frozen=True)
class ChunkSet:
    chunks: tuple[Chunk, ...]

    @property
    def n_i(self) -> int:
        return len(self.chunks)

    def __iter__(self):
        return iter(self.chunks)

    def __len__(self):
        return len(self.chunks)


def split(
    article: TokenizedText,
    question: TokenizedText,
    max_len: int = 512,
    stride: int = 128,
    reserved: int = 3,
) -> ChunkSet:
    """Cut the article into budget-sized chunks with ``stride`` token overlap.

    The budget is ``max_len - len(question) - reserved`` where ``reserved``
    counts the special tokens the backend adds at inference time.  Chunk k
    starts at k*(budget - stride); the last chunk may be shorter.  An empty
    article yields a single empty chunk (the question-only pair).
    """
    budget = max_len - len(question) - reserved
    if budget < 1:
        raise QuestionOverflowError(
            f"question of {len(question)} tokens leaves no room "
            f"(max_len={max_len}, reserved={reserved})"
        )
    length = len(article)
    if length <= budget:
        return ChunkSet((Chunk((0, length), article.token_ids),))
    if stride >= budget:
        raise ChunkingError(f"stride {stride} must be smaller than budget {budget}")
    step = budget - stride
    chunks = []
    start = 0
    while True:
        end = min(start + budget, length)
        chunks.append(Chunk((start, end), article.token_ids[start:end]))
        if end >= length:
            break
        start += step
    return ChunkSet(tuple(chunks))


def weight_exact_match(question: TokenizedText, chunk: Chunk) -> float:
    """Fraction of the chunk's token types also present in the question.

    Token identity is at the id level; the question's mask token is excluded
    from its set.  An empty chunk weighs 0.
    """
    chunk_types = set(chunk.tokens)
    if not chunk_types:
        return 0.0
    question_types = set(question.token_ids)
    if question.mask_position is not None:
        question_types.discard(question.token_ids[question.mask_position])
    return len(question_types & chunk_types) / len(chunk_types)


def cosine(u: Sequence[float], v: Sequence[float]) -> float:
    dot = sum(a * b for a, b in zip(u, v))
    nu = math.sqrt(sum(a * a for a in u))
    nv = math.sqrt(sum(b * b for b in v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return dot / (nu * nv)


def weight_similarity(
    backend: ScorerBackend, question: TokenizedText, chunk: Chunk
) -> float:
    """Cosine similarity of the question and chunk sequence embeddings."""
    return cosine(
        backend.cls_embedding(question.token_ids), backend.cls_embedding(chunk.tokens)
    )


def with_weights(chunks: ChunkSet, raws: Sequence[float]) -> ChunkSet:
    if len(raws) != len(chunks):
        raise ChunkingError(f"{len(raws)} weights for {len(chunks)} chunks")
    return ChunkSet(
        tuple(replace(c, weight_raw=float(r)) for c, r in zip(chunks, raws))
    )


def normalize(chunks: ChunkSet) -> ChunkSet:
    """Turn raw weights into a probability vector.

    An all-zero total falls back to uniform weights.
    """
    raws = [c.weight_raw for c in chunks]
    if any(r is None for r in raws):
        raise ChunkingError("normalize called before raw weights were set")
    total = sum(raws)
    if total == 0.0:
        norms = [1.0 / len(chunks)] * len(chunks)
    else:
        norms = [r / total for r in raws]
    return ChunkSet(
        tuple(replace(c, weight_norm=n) for c, n in zip(chunks, norms))
    )


def max_context_chunk(chunks: ChunkSet) -> Chunk:
    """The chunk with the largest raw weight; ties go to the earliest span."""
    best = None
    for chunk in chunks:
        if chunk.weight_raw is None:
            raise ChunkingError("max-context selection needs raw weights")
        if best is None or chunk.weight_raw > best.weight_raw:
            best = chunk
    return best
