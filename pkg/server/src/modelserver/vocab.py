"""Greedy longest-match subword vocabulary with word-level offsets.

The vocabulary is built in: five special markers, every lowercase letter and
digit as a fallback piece, continuation pieces (``##`` prefix), and a small
list of whole words.  Greedy longest-match from the left reproduces the
usual subword behaviour — known words become one piece, everything else
decomposes — and the single-character fallbacks guarantee that no
alphanumeric input ever tokenizes to ``[UNK]``.

The word ``@placeholder`` maps to ``[MASK]``.  Offsets index the source
whitespace word of every emitted token, so clients can aggregate token-level
quantities back to words without inverse tokenization.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

PLACEHOLDER = "@placeholder"
_EDGE_PUNCT = ".,;:!?\"'()"
_ALNUM_RUN = re.compile(r"[a-z0-9]+")

PAD, UNK, CLS, SEP, MASK = 0, 1, 2, 3, 4
_SPECIALS = ("[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]")

_CHARS = tuple("abcdefghijklmnopqrstuvwxyz0123456789")

_SUFFIXES = (
    "##ing", "##ness", "##tion", "##able", "##ment",
    "##ed", "##er", "##est", "##ly", "##al", "##en",
)

_WORDS = (
    "the", "a", "an", "and", "or", "of", "to", "in", "on", "by", "at",
    "for", "from", "with", "was", "were", "is", "are", "be", "been",
    "he", "she", "it", "they", "his", "her", "its", "their", "all",
    "when", "while", "after", "would", "had", "have", "has", "not",
    "this", "that", "one", "but", "as", "up", "out", "so", "if",
    "dog", "cat", "terrier", "animal", "pet", "bird", "horse",
    "water", "glass", "drink", "beer", "food", "bread", "soup", "meal",
    "salt", "pepper", "bone", "ball", "door", "gate", "garden", "park",
    "kitchen", "table", "jug", "house", "village", "field", "fields",
    "rain", "storm", "wind", "night", "morning", "cold", "warm", "heavy",
    "quiet", "fresh", "fine", "loyal", "bitter", "story", "mentions",
    "today", "buried", "poured", "filled", "held", "made", "fell",
    "brought", "hoped", "waited", "shook", "chased", "passed", "missing",
)


@dataclass(frozen=True)
class Tokenized:
    token_ids: tuple[int, ...]
    word_offsets: tuple[int, ...]
    words: tuple[str, ...]


class Vocabulary:
    def __init__(self):
        self.token_to_id: dict[str, int] = {}
        for piece in _SPECIALS:
            self.token_to_id[piece] = len(self.token_to_id)
        for char in _CHARS:
            self.token_to_id[char] = len(self.token_to_id)
        for char in _CHARS:
            self.token_to_id["##" + char] = len(self.token_to_id)
        for piece in _SUFFIXES:
            self.token_to_id[piece] = len(self.token_to_id)
        for word in _WORDS:
            if word not in self.token_to_id:
                self.token_to_id[word] = len(self.token_to_id)
        self.id_to_token = {i: t for t, i in self.token_to_id.items()}

    def __len__(self):
        return len(self.token_to_id)

    def _match_pieces(self, run: str) -> list[int]:
        """Greedy longest-match decomposition of one alphanumeric run."""
        ids: list[int] = []
        pos = 0
        while pos < len(run):
            prefix = "" if pos == 0 else "##"
            end = len(run)
            while end > pos:
                piece = prefix + run[pos:end]
                if piece in self.token_to_id:
                    ids.append(self.token_to_id[piece])
                    break
                end -= 1
            else:  # pragma: no cover - single-char pieces make this dead
                ids.append(UNK)
                end = pos + 1
            pos = end
        return ids

    def tokenize(self, text: str) -> Tokenized:
        token_ids: list[int] = []
        offsets: list[int] = []
        words = tuple(text.split())
        for w_idx, word in enumerate(words):
            if word.strip(_EDGE_PUNCT).lower() == PLACEHOLDER:
                token_ids.append(MASK)
                offsets.append(w_idx)
                continue
            for run in _ALNUM_RUN.findall(word.lower()):
                for token_id in self._match_pieces(run):
                    token_ids.append(token_id)
                    offsets.append(w_idx)
        return Tokenized(tuple(token_ids), tuple(offsets), words)
