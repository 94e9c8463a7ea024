"""Small text helpers: word/sentence splitting, stopwords, lemma normalization."""

from __future__ import annotations

import re

# Compact English stopword list; enough to keep gloss-overlap counts meaningful.
STOPWORDS = frozenset(
    """
    a an the and or but if then else of in on at to from by with without for
    as is are was were be been being am do does did done has have had having
    he she it they them his her its their this that these those i you we me
    us my your our who whom which what when where why how not no nor so such
    too very can will just than into over under again once there here all any
    both each few more most other some own same s t don now up down out off
    about against between through during before after above below
    """.split()
)

_WORD_RE = re.compile(r"[A-Za-z][A-Za-z'\-]*")
_SENTENCE_RE = re.compile(r"[^.!?]+[.!?]?")


def words(text: str) -> list[str]:
    """Lowercased word tokens of ``text`` (alphabetic runs, apostrophes kept)."""
    return [m.group(0).lower() for m in _WORD_RE.finditer(text)]


def word_spans(text: str) -> list[tuple[int, int, str]]:
    """Word tokens with their character spans, surface form preserved."""
    return [(m.start(), m.end(), m.group(0)) for m in _WORD_RE.finditer(text)]


def content_words(text: str) -> set[str]:
    """Lowercased word types with stopwords removed."""
    return {w for w in words(text) if w not in STOPWORDS}


def sentences(text: str) -> list[tuple[int, int, str]]:
    """Greedy sentence spans split on ., ! and ? (span start, end, text)."""
    out = []
    for m in _SENTENCE_RE.finditer(text):
        if m.group(0).strip():
            out.append((m.start(), m.end(), m.group(0)))
    return out


def sentence_containing(text: str, pos: int) -> str:
    """The sentence of ``text`` whose span contains character offset ``pos``."""
    for start, end, sent in sentences(text):
        if start <= pos < end:
            return sent
    return text


def normalize_lemma(word: str) -> str:
    """Canonical lemma form: lowercased, inner whitespace joined with underscores."""
    return "_".join(word.strip().lower().split())
