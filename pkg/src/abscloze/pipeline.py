"""Dataset ingestion, prediction orchestration, evaluation, and sweeps.

A Sample is one task instance: an article, a question whose blank is the
word ``@placeholder``, five options, and an optional gold label.  Strategies
differ in how the article reaches the scorer — truncated (plain), chunked
with weighted logit voting, or reduced to the single best-overlapping chunk —
and an optional improver revises low-confidence decisions afterwards.
Reports are deterministic given fixed seeds and backends: rerunning an
evaluation writes byte-identical output.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

from . import chunker
from .config import Config
from .errors import EvaluationError, MalformedSampleError
from .lexdb import LexicalDatabase
from .lingfeat import FeatureConfig
from .rerank import (
    Prediction,
    RerankConfig,
    argmax,
    difference_method,
    hyponym_rescore,
    trigger_difference,
    trigger_threshold,
    vote_aggregate,
)
from .scorer import (
    OptionScores,
    PLACEHOLDER,
    ScorerBackend,
    TokenizedText,
    build_context,
    concat,
    ensemble_average,
    score_context,
    slice_tokens,
    softmax,
)

N_OPTIONS = 5


@dataclass(frozen=True)
class Sample:
    id: str
    article: str
    question: str
    options: tuple[str, ...]
    label: int | None = None

    def __post_init__(self):
        if self.question.count(PLACEHOLDER) != 1:
            raise MalformedSampleError(
                f"sample {self.id}: question must contain exactly one "
                f"{PLACEHOLDER}, found {self.question.count(PLACEHOLDER)}"
            )
        if len(self.options) != N_OPTIONS or any(not o for o in self.options):
            raise MalformedSampleError(
                f"sample {self.id}: expected {N_OPTIONS} non-empty options"
            )
        if self.label is not None and not 0 <= self.label < N_OPTIONS:
            raise MalformedSampleError(
                f"sample {self.id}: label {self.label} out of range"
            )


@dataclass(frozen=True)
class IngestResult:
    samples: tuple[Sample, ...]
    rejections: tuple[tuple[int, str], ...]


def ingest(path) -> IngestResult:
    """Read newline-delimited JSON samples, collecting bad lines as rejections.

    Each line holds ``article``, ``question``, ``option_0`` … ``option_4``,
    and optionally ``label`` and ``id`` (defaulting to the line number).
    """
    samples = []
    rejections = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                sample = Sample(
                    id=str(record.get("id", f"s{line_no}")),
                    article=record["article"],
                    question=record["question"],
                    options=tuple(
                        record[f"option_{i}"] for i in range(N_OPTIONS)
                    ),
                    label=record.get("label"),
                )
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                rejections.append((line_no, f"{type(exc).__name__}: {exc}"))
                continue
            except MalformedSampleError as exc:
                rejections.append((line_no, str(exc)))
                continue
            samples.append(sample)
    return IngestResult(tuple(samples), tuple(rejections))


def _score_with_strategy(
    backend: ScorerBackend, sample: Sample, cfg: Config
) -> tuple[OptionScores, TokenizedText]:
    """Score one sample under one backend.

    Returns the option scores plus the context used for any later option
    rescoring: the truncated pair for the plain strategy, the best
    exact-match chunk pair otherwise.
    """
    question = backend.tokenize(sample.question)
    if question.mask_position is None:
        raise MalformedSampleError(
            f"sample {sample.id}: backend tokenizer produced no mask"
        )
    strategy = cfg.strategy_name
    article = backend.tokenize(sample.article)
    if strategy == "plain":
        pair = build_context(backend, article, question)
        return score_context(backend, pair, sample.options), pair

    chunks = chunker.split(
        article, question, cfg.max_len, cfg.stride, backend.special_token_count
    )
    pairs = [
        concat(slice_tokens(article, *c.token_span), question) for c in chunks
    ]
    exact = chunker.with_weights(
        chunks, [chunker.weight_exact_match(question, c) for c in chunks]
    )
    best = chunker.max_context_chunk(exact)
    best_pair = pairs[[c.token_span for c in chunks].index(best.token_span)]

    if strategy == "max-context":
        return score_context(backend, best_pair, sample.options), best_pair

    per_chunk = [score_context(backend, p, sample.options) for p in pairs]
    if cfg.weighting == "exact":
        weighted = exact
    else:
        weighted = chunker.with_weights(
            chunks,
            [chunker.weight_similarity(backend, question, c) for c in chunks],
        )
    return vote_aggregate(per_chunk, chunker.normalize(weighted)), best_pair


def predict(
    sample: Sample,
    backends: Sequence[ScorerBackend],
    db: LexicalDatabase | None,
    cfg: Config,
) -> Prediction:
    """Run one sample through strategy, optional ensemble, and improver."""
    scored = [_score_with_strategy(b, sample, cfg) for b in backends]
    per_backend = [s for s, _ in scored]
    scores = per_backend[0] if len(scored) == 1 else ensemble_average(per_backend)

    if cfg.method == "none":
        return Prediction(argmax(scores.probs), scores.probs)
    if db is None:
        raise EvaluationError(f"improver {cfg.improver!r} needs a lexical database")
    rcfg = RerankConfig(
        diff_threshold=cfg.diff_threshold,
        prob_threshold=cfg.prob_threshold,
        majority=cfg.majority,
        hyponym_depth=cfg.hyponym_depth,
    )
    if cfg.improver == "linguistic":
        fcfg = FeatureConfig(cfg.large_value, cfg.default_embedding)
        return difference_method(
            db, scores.probs, sample.options, rcfg, fcfg, trigger=cfg.method
        )

    # Hyponym improver: rescore per backend, then average the new logits.
    fires = (
        trigger_difference(scores.probs, rcfg)
        if cfg.method == "difference"
        else trigger_threshold(scores.probs, rcfg)
    )
    first = argmax(scores.probs)
    if not fires:
        return Prediction(first, scores.probs)
    rescored = [
        hyponym_rescore(db, backend, context, sample.options, rcfg)
        for backend, (_, context) in zip(backends, scored)
    ]
    raw = [
        sum(r[i] for r in rescored) / len(rescored) for i in range(N_OPTIONS)
    ]
    chosen = argmax(raw)
    return Prediction(
        chosen,
        softmax(raw),
        (cfg.method, "hyponym"),
        flipped_from=first if chosen != first else None,
    )


@dataclass(frozen=True)
class EvalRecord:
    id: str
    chosen: int
    gold: int
    fired: tuple[str, ...]


@dataclass(frozen=True)
class EvalReport:
    strategy: str
    n_samples: int
    n_correct: int
    accuracy: float
    records: tuple[EvalRecord, ...]


def run_label(cfg: Config) -> str:
    """Human-readable name of the configured strategy/improver combination."""
    if cfg.method == "none":
        return cfg.strategy_name
    return f"{cfg.strategy_name}+{cfg.improver}-{cfg.method}"


def evaluate(
    samples: Sequence[Sample],
    backends: Sequence[ScorerBackend],
    db: LexicalDatabase | None,
    cfg: Config,
) -> EvalReport:
    """Accuracy over labeled samples; record order follows input order."""
    unlabeled = [s.id for s in samples if s.label is None]
    if unlabeled:
        raise EvaluationError(f"unlabeled samples: {', '.join(unlabeled)}")
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            predictions = list(
                pool.map(lambda s: predict(s, backends, db, cfg), samples)
            )
    else:
        predictions = [predict(s, backends, db, cfg) for s in samples]
    records = tuple(
        EvalRecord(s.id, p.chosen, s.label, p.fired)
        for s, p in zip(samples, predictions)
    )
    n_correct = sum(1 for r in records if r.chosen == r.gold)
    n = len(records)
    return EvalReport(
        strategy=run_label(cfg),
        n_samples=n,
        n_correct=n_correct,
        accuracy=n_correct / n if n else 0.0,
        records=records,
    )


def report_lines(report: EvalReport) -> str:
    """Newline-delimited JSON serialization, stable across runs."""
    lines = [
        json.dumps(
            {
                "id": r.id,
                "chosen": r.chosen,
                "gold": r.gold,
                "fired": list(r.fired),
            },
            sort_keys=True,
        )
        for r in report.records
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def report_summary(report: EvalReport) -> str:
    return (
        f"strategy: {report.strategy}\n"
        f"samples:  {report.n_samples}\n"
        f"correct:  {report.n_correct}\n"
        f"accuracy: {report.accuracy:.4f}\n"
    )


@dataclass(frozen=True)
class SweepResult:
    best_threshold: float
    points: tuple[tuple[float, float], ...]


def sweep_threshold(
    samples: Sequence[Sample],
    backends: Sequence[ScorerBackend],
    db: LexicalDatabase | None,
    cfg: Config,
    grid: Sequence[float],
) -> SweepResult:
    """Evaluate the configured improver at each grid value.

    The swept knob is the one the active trigger reads: the top-2 gap
    threshold for ``method=difference``, the top-1 level for
    ``method=threshold``.  Ties go to the smallest threshold.
    """
    if cfg.method == "none":
        raise EvaluationError("sweep needs method=difference or method=threshold")
    if not grid:
        raise EvaluationError("sweep grid is empty")
    points = []
    best_t, best_acc = None, -1.0
    for t in sorted(grid):
        knob = "diff_threshold" if cfg.method == "difference" else "prob_threshold"
        report = evaluate(samples, backends, db, replace(cfg, **{knob: t}))
        points.append((t, report.accuracy))
        if report.accuracy > best_acc:
            best_t, best_acc = t, report.accuracy
    return SweepResult(best_t, tuple(points))
