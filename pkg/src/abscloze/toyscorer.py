"""Deterministic co-occurrence scorer for running the pipeline without a model.

The toy backend is built from a small document corpus.  A candidate token's
score at the mask is log(1 + S) where S sums, over every non-mask context
position, the number of corpus documents containing both the candidate and
that position's token.  S is linear in the context's token multiset, so
integrated-gradients attributions have a closed form: the gradient projection
at any interpolation point is exactly the per-position co-occurrence count,
and the attribution sum telescopes to S with zero error.  ``ig_target_value``
therefore reports the linear pre-log score S, the quantity the gradients
differentiate; the log readout is monotone and never changes an argmax.
"""

from __future__ import annotations

import math
import re
from typing import Sequence

from .errors import BuildError, ShapeError
from .scorer import PLACEHOLDER, ScorerBackend, TokenizedText

PAD, UNK, MASK = 0, 1, 2
_SPECIALS = ("[PAD]", "[UNK]", "[MASK]")
_TOKEN_RE = re.compile(r"[a-z0-9]+")


def _word_tokens(word: str) -> list[str]:
    return _TOKEN_RE.findall(word.lower())


class ToyScorer(ScorerBackend):
    """Corpus co-occurrence backend; immutable after construction."""

    def __init__(self, corpus: Sequence[str], max_len: int = 512):
        if not corpus:
            raise BuildError("toy scorer needs a non-empty corpus")
        self._max_len = max_len
        doc_types = []
        vocab_types: set[str] = set()
        for doc in corpus:
            types = set()
            for word in doc.split():
                types.update(_word_tokens(word))
            doc_types.append(types)
            vocab_types.update(types)
        self.vocab: dict[str, int] = {s: i for i, s in enumerate(_SPECIALS)}
        for t in sorted(vocab_types):
            self.vocab[t] = len(self.vocab)
        self.id_to_token = {i: t for t, i in self.vocab.items()}
        # Document-level co-occurrence: co[(a, b)] = number of docs holding both.
        self._co: dict[tuple[int, int], int] = {}
        for types in doc_types:
            ids = sorted(self.vocab[t] for t in types)
            for i, a in enumerate(ids):
                for b in ids[i:]:
                    self._co[(a, b)] = self._co.get((a, b), 0) + 1

    # -- contract properties ----------------------------------------------

    @property
    def max_len(self) -> int:
        return self._max_len

    @property
    def special_token_count(self) -> int:
        return 0  # the toy scorer adds no markers around its input

    @property
    def mask_token_id(self) -> int:
        return MASK

    @property
    def pad_token_id(self) -> int:
        return PAD

    # -- contract operations ------------------------------------------------

    def tokenize(self, text: str) -> TokenizedText:
        ids: list[int] = []
        offsets: list[int] = []
        words = text.split()
        mask = None
        for w_idx, word in enumerate(words):
            if word.lower().strip(".,;:!?\"'()") == PLACEHOLDER:
                if mask is None:
                    mask = len(ids)
                ids.append(MASK)
                offsets.append(w_idx)
                continue
            for tok in _word_tokens(word):
                ids.append(self.vocab.get(tok, UNK))
                offsets.append(w_idx)
        return TokenizedText(tuple(ids), tuple(offsets), mask, tuple(words))

    def co_count(self, a: int, b: int) -> int:
        key = (a, b) if a <= b else (b, a)
        return self._co.get(key, 0)

    def _linear_score(self, token_ids, mask_position, candidate: int) -> float:
        return float(
            sum(
                self.co_count(candidate, t)
                for i, t in enumerate(token_ids)
                if i != mask_position
            )
        )

    def vocab_scores(self, token_ids, mask_position, candidate_token_ids):
        if not 0 <= mask_position < len(token_ids):
            raise ShapeError(f"mask position {mask_position} out of bounds")
        if not candidate_token_ids:
            raise ShapeError("empty candidate list")
        return [
            math.log1p(self._linear_score(token_ids, mask_position, c))
            for c in candidate_token_ids
        ]

    def cls_embedding(self, token_ids):
        counts = [0.0] * len(self.vocab)
        for t in token_ids:
            if t > MASK:
                counts[t] += 1.0
        norm = math.sqrt(sum(c * c for c in counts))
        if norm == 0.0:
            return counts
        return [c / norm for c in counts]

    def ig_grad_projection(self, token_ids, mask_position, target_token_id, alpha):
        if not 0.0 < alpha <= 1.0:
            raise ShapeError(f"alpha {alpha} outside (0, 1]")
        # The linear score's gradient is constant along the whole path, so the
        # projection is alpha-independent: co(target, token) per position,
        # zero at the mask (the score never reads the mask slot) and at pads
        # (the pad token co-occurs with nothing).
        return [
            0.0 if i == mask_position else float(self.co_count(target_token_id, t))
            for i, t in enumerate(token_ids)
        ]

    def ig_target_value(self, token_ids, mask_position, target_token_id):
        return self._linear_score(token_ids, mask_position, target_token_id)


def toy_scorer_build(corpus: Sequence[str], max_len: int = 512) -> ToyScorer:
    return ToyScorer(corpus, max_len=max_len)
