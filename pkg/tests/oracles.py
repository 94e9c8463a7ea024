"""Independent brute-force oracles the test suite checks the package against.

Everything here is derived straight from the defining formulas with the
dumbest possible code — no imports from the package's computation paths —
so a bug in the implementation cannot hide in its own test.  Treat these as
frozen: fix the implementation, not the oracle.
"""

from __future__ import annotations

import math
import re

_WORD = re.compile(r"[a-z][a-z'\-]*")


def exact_match_weight_oracle(question_ids, chunk_ids, mask_id=None) -> float:
    """Eq-style exact weight: |set(q) ∩ set(chunk)| / |set(chunk)|."""
    q = set(question_ids)
    if mask_id is not None:
        q.discard(mask_id)
    c = set(chunk_ids)
    if not c:
        return 0.0
    return len(q & c) / len(c)


def normalize_oracle(raws):
    total = 0.0
    for r in raws:
        total += r
    if total == 0.0:
        return [1.0 / len(raws)] * len(raws)
    return [r / total for r in raws]


def chunk_layout_oracle(length, budget, stride):
    """Expected chunk spans: starts at k*(budget-stride), last ends at length."""
    if length <= budget:
        return [(0, length)]
    spans = []
    step = budget - stride
    start = 0
    while True:
        end = start + budget
        if end >= length:
            spans.append((start, length))
            return spans
        spans.append((start, end))
        start += step


def covers_every_token(spans, length) -> bool:
    covered = [False] * length
    for start, end in spans:
        for i in range(start, end):
            covered[i] = True
    return all(covered)


def consecutive_overlaps(spans):
    out = []
    for (s1, e1), (s2, e2) in zip(spans, spans[1:]):
        lo, hi = max(s1, s2), min(e1, e2)
        out.append(max(0, hi - lo))
    return out


def bfs_depth_oracle(hypernym_edges, node):
    """Shortest hypernym-path length from node to any root, by plain BFS.

    ``hypernym_edges`` maps id -> list of parent ids; a root has no parents.
    """
    frontier = [node]
    seen = {node}
    depth = 0
    while frontier:
        if any(not hypernym_edges.get(n) for n in frontier):
            return depth
        nxt = []
        for n in frontier:
            for parent in hypernym_edges.get(n, ()):
                if parent not in seen:
                    seen.add(parent)
                    nxt.append(parent)
        frontier = nxt
        depth += 1
    raise AssertionError(f"no root reachable from {node}")


def gloss_overlap_oracle(gloss: str, context_words, stopwords) -> int:
    """Type-level overlap count between a gloss and a context word list."""
    gloss_types = {
        w for w in _WORD.findall(gloss.lower()) if w not in stopwords
    }
    context_types = {
        w.lower() for w in context_words if w.lower() not in stopwords
    }
    return len(gloss_types & context_types)


def lesk_oracle(senses, context_words, stopwords):
    """Index of the sense with maximal gloss overlap; ties keep the earlier."""
    best, best_overlap = 0, -1
    for rank, gloss in enumerate(senses):
        overlap = gloss_overlap_oracle(gloss, context_words, stopwords)
        if overlap > best_overlap:
            best, best_overlap = rank, overlap
    return best


def strict_less_count(a, b) -> int:
    count = 0
    for x, y in zip(a, b):
        if y < x:
            count += 1
    return count


def softmax_oracle(raw):
    exps = [math.exp(r) for r in raw]
    total = sum(exps)
    return [e / total for e in exps]


def linear_ig_oracle(co_count, token_ids, mask_position, target):
    """Closed-form attributions of the linear co-occurrence score.

    For F(x) = Σ_{i != mask} co(target, x_i) integrated from the all-pad
    baseline, the exact attribution of position i is co(target, x_i) at
    non-mask positions and 0 at the mask, at any step count.
    """
    return [
        0.0 if i == mask_position else float(co_count(target, t))
        for i, t in enumerate(token_ids)
    ]
