"""Integrated-gradients attributions for the predicted option.

The path integral from the padding baseline to the real input is
approximated with a right Riemann sum: attribution_i = (1/n) Σ_k g_i(k/n),
where g(α) is the backend's per-token projection (x − baseline)·∇F at the
α-interpolated point and F scores the target token at the mask.  Token
attributions are summed into word attributions through the tokenizer's
word-offset map, and the ten largest word scores are normalized for display.

The completeness identity Σ attributions ≈ F(x) − F(baseline) is tracked on
every run; for a linear scoring function the gap is zero at any step count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import CapabilityError, ShapeError
from .scorer import CAP_IG_GRAD, ScorerBackend, TokenizedText


@dataclass(frozen=True)
class AttributionResult:
    word_scores: tuple[tuple[str, float], ...]
    top10: tuple[tuple[str, float], ...]
    target: int
    n_steps: int
    completeness_gap: float


def integrated_gradients(
    backend: ScorerBackend,
    text: TokenizedText,
    target_token: int,
    n_steps: int = 25,
) -> list[float]:
    """Per-token attribution via the right-rule Riemann sum over α ∈ (0, 1].

    Issues exactly ``n_steps`` gradient calls, at α = 1/n, 2/n, …, 1.
    """
    if not backend.supports(CAP_IG_GRAD):
        raise CapabilityError("backend does not supply gradient projections")
    if text.mask_position is None:
        raise ShapeError("attribution needs a mask position")
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    totals = [0.0] * len(text.token_ids)
    for k in range(1, n_steps + 1):
        projection = backend.ig_grad_projection(
            text.token_ids, text.mask_position, target_token, k / n_steps
        )
        if len(projection) != len(totals):
            raise ShapeError(
                f"projection of {len(projection)} values for "
                f"{len(totals)} tokens"
            )
        for i, g in enumerate(projection):
            totals[i] += g
    return [t / n_steps for t in totals]


def completeness_gap(
    backend: ScorerBackend,
    text: TokenizedText,
    target_token: int,
    attributions: Sequence[float],
) -> float:
    """|Σ attributions − (F(x) − F(baseline))| where baseline is all-pad."""
    f_x = backend.ig_target_value(text.token_ids, text.mask_position, target_token)
    baseline = [backend.pad_token_id] * len(text.token_ids)
    f_base = backend.ig_target_value(baseline, text.mask_position, target_token)
    return abs(sum(attributions) - (f_x - f_base))


def aggregate_to_words(
    token_scores: Sequence[float], offsets: Sequence[int]
) -> list[float]:
    """Sum token scores into word scores; words with no tokens score 0."""
    if len(token_scores) != len(offsets):
        raise ShapeError(
            f"{len(token_scores)} token scores for {len(offsets)} offsets"
        )
    if not offsets:
        return []
    out = [0.0] * (max(offsets) + 1)
    for score, offset in zip(token_scores, offsets):
        out[offset] += score
    return out


def top10_normalize(
    word_scores: Sequence[tuple[str, float]],
) -> list[tuple[str, float]]:
    """The 10 largest word scores, normalized to sum to 1.

    Ties keep the earlier word.  When the selected scores sum to zero (or
    below), weights fall back to uniform.
    """
    if not word_scores:
        raise ShapeError("no word scores to rank")
    order = sorted(
        range(len(word_scores)), key=lambda i: (-word_scores[i][1], i)
    )[:10]
    selected = [word_scores[i] for i in order]
    total = sum(score for _, score in selected)
    if total > 0.0:
        return [(word, score / total) for word, score in selected]
    return [(word, 1.0 / len(selected)) for word, _ in selected]


def attribute(
    backend: ScorerBackend,
    text: TokenizedText,
    target_token: int,
    n_steps: int = 25,
) -> AttributionResult:
    """Full attribution pass: token IG → word aggregation → top-10 view."""
    token_scores = integrated_gradients(backend, text, target_token, n_steps)
    gap = completeness_gap(backend, text, target_token, token_scores)
    per_word = aggregate_to_words(token_scores, text.word_offsets)
    labels = [
        text.words[i] if i < len(text.words) else f"word{i}"
        for i in range(len(per_word))
    ]
    word_scores = tuple(zip(labels, per_word))
    return AttributionResult(
        word_scores=word_scores,
        top10=tuple(top10_normalize(word_scores)),
        target=target_token,
        n_steps=n_steps,
        completeness_gap=gap,
    )
