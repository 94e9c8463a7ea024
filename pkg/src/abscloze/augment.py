"""Hypernym-substitution article variants and masked-copy emission.

Pick n nouns from an article, disambiguate each against its sentence, draw
one hypernym per noun uniformly at random (seeded), and emit one article
variant per subset of the selected nouns — 2^n variants, the empty subset
being the untouched article.  Variants can then be written as mask-annotated
records for masked-language-model training; the training itself happens
elsewhere.

Every substitution is recorded with its character span in the variant, so
any variant can be reversed back to the original article exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .lexdb import LexicalDatabase
from .textutil import STOPWORDS, sentence_containing, word_spans, words


@dataclass(frozen=True)
class AugmentConfig:
    n: int = 3
    mask_rate: float = 0.15
    seed: int = 0

    def __post_init__(self):
        if not 0 <= self.n <= 10:
            raise ValueError(f"n must be in [0, 10], got {self.n}")
        if not 0.0 <= self.mask_rate <= 1.0:
            raise ValueError(f"mask_rate must be in [0, 1], got {self.mask_rate}")


@dataclass(frozen=True)
class Substitution:
    """One applied replacement, positioned by character offset in the variant."""

    start: int
    original: str
    replacement: str
    source_synset: str
    hypernym_synset: str


@dataclass
class AugmentedSample:
    text: str
    substitutions: tuple[Substitution, ...]
    mask_positions: tuple[int, ...] = field(default_factory=tuple)


def select_nouns(
    db: LexicalDatabase, article: str, n: int, seed: int
) -> list[tuple[int, str]]:
    """Uniformly sample n distinct noun positions, as (char offset, surface).

    A word position qualifies when its lowercased surface resolves to a noun
    lemma and is not a stopword.  Fewer than n candidates means all of them
    are returned.  Surface duplicates at different positions are distinct
    candidates.
    """
    candidates = [
        (start, surface)
        for start, _end, surface in word_spans(article)
        if surface.lower() not in STOPWORDS and db.morphy(surface, "n") is not None
    ]
    if len(candidates) <= n:
        return candidates
    picked = random.Random(seed).sample(candidates, n)
    return sorted(picked)


def substitute(
    db: LexicalDatabase,
    article: str,
    selected: list[tuple[int, str]],
    seed: int,
) -> list[AugmentedSample]:
    """All 2^k subset variants of the selected substitutions.

    Each selected noun is disambiguated by gloss overlap with its sentence
    and paired with one uniformly drawn direct hypernym; nouns whose sense
    has no hypernym drop out before the power-set expansion.  Variant order
    follows the subset bitmask, so variants[0] is always the original text.
    """
    rng = random.Random(seed)
    plan = []
    for offset, surface in sorted(selected):
        lemma = db.morphy(surface, "n")
        if lemma is None:
            continue
        sense = db.lesk_disambiguate(lemma, words(sentence_containing(article, offset)))
        hypernyms = db.hypernyms(sense.id)
        if not hypernyms:
            continue
        hyper = hypernyms[rng.randrange(len(hypernyms))]
        replacement = hyper.lemmas[0].replace("_", " ")
        plan.append((offset, surface, replacement, sense.id, hyper.id))

    variants = []
    for subset in range(2 ** len(plan)):
        pieces = []
        subs = []
        cursor = 0
        written = 0
        for bit, (offset, surface, replacement, sense_id, hyper_id) in enumerate(plan):
            if not subset >> bit & 1:
                continue
            pieces.append(article[cursor:offset])
            written += offset - cursor
            subs.append(
                Substitution(written, surface, replacement, sense_id, hyper_id)
            )
            pieces.append(replacement)
            written += len(replacement)
            cursor = offset + len(surface)
        pieces.append(article[cursor:])
        variants.append(AugmentedSample("".join(pieces), tuple(subs)))
    return variants


def reverse_substitutions(sample: AugmentedSample) -> str:
    """Undo every recorded substitution, restoring the original article."""
    text = sample.text
    for sub in reversed(sample.substitutions):
        end = sub.start + len(sub.replacement)
        text = text[: sub.start] + sub.original + text[end:]
    return text


def augment_article(
    db: LexicalDatabase, article: str, cfg: AugmentConfig
) -> list[AugmentedSample]:
    selected = select_nouns(db, article, cfg.n, cfg.seed)
    return substitute(db, article, selected, cfg.seed)


def emit_mlm_file(variants, cfg: AugmentConfig, out) -> int:
    """Write one tab-separated record per variant: text, mask token indices.

    Tokens are the text's whitespace words; each is masked independently
    with probability ``mask_rate`` under the config seed.  Text is
    whitespace-normalized in the record so it stays on one line.  Returns the
    number of records written and fills each variant's ``mask_positions``.
    """
    rng = random.Random(cfg.seed)
    written = 0
    with open(out, "w", encoding="utf-8") as fh:
        for variant in variants:
            tokens = variant.text.split()
            variant.mask_positions = tuple(
                i for i in range(len(tokens)) if rng.random() < cfg.mask_rate
            )
            fh.write(
                " ".join(tokens)
                + "\t"
                + ",".join(str(i) for i in variant.mask_positions)
                + "\n"
            )
            written += 1
    return written
