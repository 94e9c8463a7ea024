"""Lexical database: WordNet-format parsing and sense/taxonomy queries.

Loads fixed-field ``index.<pos>`` / ``data.<pos>`` files plus a tab-separated
sentiment score file into an immutable in-memory graph, then answers sense,
hypernym/hyponym, depth, gloss, and gloss-overlap disambiguation queries.
Only the ``@`` (hypernym) and ``~`` (hyponym) pointer symbols are linked;
every other pointer symbol is skipped.  The database never changes after
``load`` returns, so all queries are safe to call from multiple threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import LexParseError, LinkError, NoSenseError, UnknownSynsetError
from .textutil import STOPWORDS, normalize_lemma, words

# Part-of-speech file suffix -> synset id letter.  Satellite adjectives (ss
# type "s") live in data.adj and share the "a" offset space.
POS_FILES = (("noun", "n"), ("verb", "v"), ("adj", "a"), ("adv", "r"))
_SS_TYPE_TO_POS = {"n": "n", "v": "v", "a": "a", "s": "a", "r": "r"}
_SENSE_KEY_POS = {"1": "n", "2": "v", "3": "a", "4": "r", "5": "a"}

HYPERNYM = "@"
HYPONYM = "~"

# Noun detachment suffix rules, applied in order (suffix, replacement).
_NOUN_SUFFIX_RULES = (
    ("ches", "ch"),
    ("shes", "sh"),
    ("ses", "s"),
    ("xes", "x"),
    ("zes", "z"),
    ("ies", "y"),
    ("men", "man"),
    ("s", ""),
)


@dataclass(frozen=True)
class SentiScores:
    """Positivity/negativity/objectivity of one synset; the three sum to 1."""

    pos: float
    neg: float
    obj: float

    def __post_init__(self):
        if abs(self.pos + self.neg + self.obj - 1.0) > 1e-9:
            raise ValueError(f"senti scores must sum to 1: {self}")


NEUTRAL_SENTI = SentiScores(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class Synset:
    """One node of the lexical graph.

    ``id`` is the part-of-speech letter plus the zero-padded byte offset,
    e.g. ``n02084442``.  Lemmas are lowercased with underscores joining
    multiword entries.  Hypernym/hyponym id lists are symmetric across the
    database.
    """

    id: str
    pos: str
    ss_type: str
    lemmas: tuple[str, ...]
    gloss: str
    hypernym_ids: tuple[str, ...]
    hyponym_ids: tuple[str, ...]
    tag_count_per_lemma: dict[str, int] = field(default_factory=dict)

    def tag_count(self, lemma: str) -> int:
        return self.tag_count_per_lemma.get(lemma, 0)


@dataclass
class _DraftSynset:
    id: str
    pos: str
    ss_type: str
    lemmas: list[str]
    gloss: str
    hypernym_ids: list[str]
    hyponym_ids: list[str]
    tag_count_per_lemma: dict[str, int]


class LexicalDatabase:
    """Immutable sense inventory plus taxonomy, sentiment, and frequency maps."""

    def __init__(self, synsets, lemma_index, senti, frequency):
        self.synsets: dict[str, Synset] = synsets
        self.lemma_index: dict[tuple[str, str], tuple[str, ...]] = lemma_index
        self.senti: dict[str, SentiScores] = senti
        self.frequency: dict[str, int] = frequency
        self._depths = self._compute_depths()

    # -- basic lookups ---------------------------------------------------

    def __len__(self):
        return len(self.synsets)

    def __eq__(self, other):
        if not isinstance(other, LexicalDatabase):
            return NotImplemented
        return (
            self.synsets == other.synsets
            and self.lemma_index == other.lemma_index
            and self.senti == other.senti
            and self.frequency == other.frequency
        )

    def synset(self, synset_id: str) -> Synset:
        try:
            return self.synsets[synset_id]
        except KeyError:
            raise UnknownSynsetError(f"unknown synset id {synset_id!r}") from None

    def senses(self, word: str, pos: str | None = None) -> list[Synset]:
        """Senses of ``word`` in database rank order (most common first).

        With ``pos=None`` the senses of every part of speech are pooled,
        nouns first.  Absent words yield an empty list.
        """
        lemma = normalize_lemma(word)
        pos_list = [pos] if pos is not None else [p for _, p in POS_FILES]
        out = []
        for p in pos_list:
            for sid in self.lemma_index.get((lemma, p), ()):
                out.append(self.synsets[sid])
        return out

    def hypernyms(self, synset_id: str) -> list[Synset]:
        """Direct (one-step) hypernyms."""
        return [self.synsets[i] for i in self.synset(synset_id).hypernym_ids]

    def hyponyms(self, synset_id: str) -> list[Synset]:
        """Direct (one-step) hyponyms."""
        return [self.synsets[i] for i in self.synset(synset_id).hyponym_ids]

    def depth(self, synset_id: str) -> int:
        """Length of the shortest hypernym path to any root; roots are 0."""
        self.synset(synset_id)
        try:
            return self._depths[synset_id]
        except KeyError:
            raise LinkError(f"no root reachable from {synset_id!r}") from None

    def senti_scores(self, synset_id: str) -> SentiScores:
        """Sentiment of a synset; rows absent from the score file are neutral."""
        return self.senti.get(synset_id, NEUTRAL_SENTI)

    def freq(self, word: str) -> int:
        return self.frequency.get(normalize_lemma(word), 0)

    def morphy(self, word: str, pos: str = "n") -> str | None:
        """Resolve a surface form to a known lemma, trying simple suffix rules.

        Exact match wins; otherwise noun detachment suffixes are tried in
        order.  Returns None when nothing matches.
        """
        lemma = normalize_lemma(word)
        if (lemma, pos) in self.lemma_index:
            return lemma
        if pos == "n":
            for suffix, repl in _NOUN_SUFFIX_RULES:
                if lemma.endswith(suffix) and len(lemma) > len(suffix):
                    candidate = lemma[: -len(suffix)] + repl
                    if (candidate, pos) in self.lemma_index:
                        return candidate
        return None

    # -- disambiguation --------------------------------------------------

    def lesk_disambiguate(self, word: str, context: list[str]) -> Synset:
        """Pick the noun sense whose gloss best overlaps the context.

        Overlap is counted over lowercased word types with stopwords removed,
        using the whole gloss (definition plus example sentences).  Ties go to
        the more common sense.
        """
        candidates = self.senses(word, "n")
        if not candidates:
            raise NoSenseError(f"{word!r} has no noun senses")
        context_types = {w.lower() for w in context if w.lower() not in STOPWORDS}
        best = candidates[0]
        best_overlap = -1
        for sense in candidates:
            gloss_types = {w for w in words(sense.gloss) if w not in STOPWORDS}
            overlap = len(gloss_types & context_types)
            if overlap > best_overlap:
                best, best_overlap = sense, overlap
        return best

    # -- depth table -----------------------------------------------------

    def _compute_depths(self) -> dict[str, int]:
        # Multi-source BFS downward from the roots gives every synset its
        # shortest hypernym-path distance in one pass.
        depths: dict[str, int] = {}
        queue: deque[str] = deque()
        for sid, syn in self.synsets.items():
            if not syn.hypernym_ids:
                depths[sid] = 0
                queue.append(sid)
        while queue:
            sid = queue.popleft()
            d = depths[sid]
            for child in self.synsets[sid].hyponym_ids:
                if child not in depths:
                    depths[child] = d + 1
                    queue.append(child)
        return depths


# -- loading ---------------------------------------------------------------


def load(wordnet_dir, senti_file=None, freq_file=None) -> LexicalDatabase:
    """Parse database files under ``wordnet_dir`` into a LexicalDatabase.

    Requires at least the noun index/data pair; other parts of speech are
    parsed when present.  ``senti_file`` is the tab-separated score file
    (POS, offset, PosScore, NegScore, SynsetTerms, Gloss).  ``freq_file`` is
    an optional ``lemma<TAB>count`` table; when missing, word frequency falls
    back to the sum of the corpus tag counts recorded per lemma.
    """
    from pathlib import Path

    wordnet_dir = Path(wordnet_dir)
    drafts: dict[str, _DraftSynset] = {}
    seen_any = False
    for suffix, pos in POS_FILES:
        data_path = wordnet_dir / f"data.{suffix}"
        if not data_path.exists():
            if pos == "n":
                raise FileNotFoundError(f"missing required file {data_path}")
            continue
        seen_any = True
        _parse_data_file(data_path, pos, drafts)
    if not seen_any:
        raise FileNotFoundError(f"no data.<pos> files under {wordnet_dir}")

    _check_links(drafts)
    _complete_symmetry(drafts)

    lemma_index: dict[tuple[str, str], tuple[str, ...]] = {}
    for suffix, pos in POS_FILES:
        index_path = wordnet_dir / f"index.{suffix}"
        if index_path.exists():
            _parse_index_file(index_path, pos, drafts, lemma_index)

    sense_path = wordnet_dir / "index.sense"
    if sense_path.exists():
        _parse_sense_index(sense_path, drafts)

    synsets = {
        sid: Synset(
            id=d.id,
            pos=d.pos,
            ss_type=d.ss_type,
            lemmas=tuple(d.lemmas),
            gloss=d.gloss,
            hypernym_ids=tuple(d.hypernym_ids),
            hyponym_ids=tuple(d.hyponym_ids),
            tag_count_per_lemma=dict(d.tag_count_per_lemma),
        )
        for sid, d in drafts.items()
    }

    senti = _parse_senti_file(senti_file) if senti_file else {}

    if freq_file:
        frequency = _parse_freq_file(freq_file)
    else:
        frequency = {}
        for syn in synsets.values():
            for lemma, count in syn.tag_count_per_lemma.items():
                frequency[lemma] = frequency.get(lemma, 0) + count

    return LexicalDatabase(synsets, lemma_index, senti, frequency)


def _parse_data_file(path, pos, drafts):
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip() or line.startswith(" "):
                continue  # license header lines begin with spaces
            try:
                head, _, gloss = line.partition("|")
                fields = head.split()
                offset = fields[0]
                ss_type = fields[2]
                if ss_type not in _SS_TYPE_TO_POS:
                    raise ValueError(f"bad synset type {ss_type!r}")
                w_cnt = int(fields[3], 16)
                lemmas = []
                at = 4
                for _ in range(w_cnt):
                    lemmas.append(fields[at].lower())
                    at += 2  # skip lex_id
                p_cnt = int(fields[at])
                at += 1
                hypernyms = []
                hyponyms = []
                for _ in range(p_cnt):
                    symbol = fields[at]
                    target_offset = fields[at + 1]
                    target_pos = fields[at + 2]
                    # fields[at + 3] is the source/target word pair; unused.
                    at += 4
                    target_id = _SS_TYPE_TO_POS[target_pos] + target_offset
                    if symbol == HYPERNYM:
                        hypernyms.append(target_id)
                    elif symbol == HYPONYM:
                        hyponyms.append(target_id)
            except (IndexError, ValueError) as exc:
                raise LexParseError(path, line_no, f"malformed data record ({exc})")
            if not all(lemmas):
                raise LexParseError(path, line_no, "empty lemma")
            sid = pos + offset
            drafts[sid] = _DraftSynset(
                id=sid,
                pos=pos,
                ss_type=ss_type,
                lemmas=lemmas,
                gloss=gloss.strip(),
                hypernym_ids=hypernyms,
                hyponym_ids=hyponyms,
                tag_count_per_lemma={},
            )


def _parse_index_file(path, pos, drafts, lemma_index):
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip() or line.startswith(" "):
                continue
            fields = line.split()
            try:
                lemma = fields[0].lower()
                synset_cnt = int(fields[2])
                p_cnt = int(fields[3])
                offsets = fields[4 + p_cnt + 2 :]
                if len(offsets) != synset_cnt:
                    raise ValueError(
                        f"expected {synset_cnt} offsets, found {len(offsets)}"
                    )
            except (IndexError, ValueError) as exc:
                raise LexParseError(path, line_no, f"malformed index record ({exc})")
            ids = []
            for offset in offsets:
                sid = pos + offset
                if sid not in drafts:
                    raise LinkError(
                        f"index entry {lemma!r} points at missing synset {sid}"
                    )
                ids.append(sid)
            lemma_index[(lemma, pos)] = tuple(ids)


def _parse_sense_index(path, drafts):
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            fields = line.split()
            try:
                sense_key, offset, _sense_no, tag_cnt = fields[:4]
                lemma, rest = sense_key.split("%", 1)
                pos = _SENSE_KEY_POS[rest.split(":", 1)[0]]
                count = int(tag_cnt)
            except (IndexError, ValueError, KeyError) as exc:
                raise LexParseError(path, line_no, f"malformed sense record ({exc})")
            sid = pos + offset
            draft = drafts.get(sid)
            if draft is not None:
                draft.tag_count_per_lemma[lemma.lower()] = count


def _parse_senti_file(path) -> dict[str, SentiScores]:
    out: dict[str, SentiScores] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.rstrip("\n").split("\t")
            try:
                pos, offset, pos_score, neg_score = fields[:4]
                p = float(pos_score)
                n = float(neg_score)
            except (IndexError, ValueError) as exc:
                raise LexParseError(path, line_no, f"malformed senti record ({exc})")
            if not (0.0 <= p <= 1.0 and 0.0 <= n <= 1.0 and p + n <= 1.0 + 1e-9):
                raise LexParseError(path, line_no, f"scores out of range: {p}, {n}")
            obj = 1.0 - p - n
            out[pos + offset.zfill(8)] = SentiScores(p, n, obj)
    return out


def _parse_freq_file(path) -> dict[str, int]:
    out: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                lemma, count = line.rstrip("\n").split("\t")
                out[normalize_lemma(lemma)] = int(count)
            except ValueError as exc:
                raise LexParseError(path, line_no, f"malformed frequency row ({exc})")
    return out


def _check_links(drafts):
    for sid, draft in drafts.items():
        for target in list(draft.hypernym_ids) + list(draft.hyponym_ids):
            if target not in drafts:
                raise LinkError(f"synset {sid} points at missing synset {target}")


def _complete_symmetry(drafts):
    # Real databases carry both pointer directions; hand-built fixtures may
    # not, so fill in whichever half is missing.
    for sid, draft in drafts.items():
        for parent in draft.hypernym_ids:
            if sid not in drafts[parent].hyponym_ids:
                drafts[parent].hyponym_ids.append(sid)
        for child in draft.hyponym_ids:
            if sid not in drafts[child].hypernym_ids:
                drafts[child].hypernym_ids.append(sid)
