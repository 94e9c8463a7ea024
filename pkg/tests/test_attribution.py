import pytest

import oracles
from abscloze.attribution import (
    aggregate_to_words,
    attribute,
    completeness_gap,
    integrated_gradients,
    top10_normalize,
)
from abscloze.errors import CapabilityError, ShapeError
from abscloze.toyscorer import ToyScorer

CORPUS = ["glass of water", "he drank a glass of water", "the sky is blue"]


@pytest.fixture(scope="module")
def toy():
    return ToyScorer(CORPUS)


@pytest.fixture(scope="module")
def context(toy):
    return toy.tokenize("he drank a @placeholder of water")


def test_attributions_match_the_closed_form(toy, context):
    glass = toy.vocab["glass"]
    got = integrated_gradients(toy, context, glass, n_steps=25)
    want = oracles.linear_ig_oracle(
        toy.co_count, context.token_ids, context.mask_position, glass
    )
    assert got == pytest.approx(want, abs=1e-12)


def test_attributions_are_step_count_invariant_for_linear_scores(toy, context):
    glass = toy.vocab["glass"]
    for n in (1, 2, 25, 50):
        got = integrated_gradients(toy, context, glass, n_steps=n)
        assert got == pytest.approx(
            integrated_gradients(toy, context, glass, n_steps=25), abs=1e-12
        )


def test_completeness_gap_is_zero_for_the_linear_backend(toy, context):
    glass = toy.vocab["glass"]
    attributions = integrated_gradients(toy, context, glass)
    assert completeness_gap(toy, context, glass, attributions) < 1e-9
    # and the sum itself equals the pre-log score of 7.
    assert sum(attributions) == pytest.approx(7.0)


def test_ig_issues_exactly_n_gradient_calls(toy, context):
    calls = []
    real = toy.ig_grad_projection

    class Counting(ToyScorer):
        def ig_grad_projection(self, token_ids, mask_position, target, alpha):
            calls.append(alpha)
            return real(token_ids, mask_position, target, alpha)

    counting = Counting(CORPUS)
    integrated_gradients(counting, context, toy.vocab["glass"], n_steps=4)
    assert calls == [0.25, 0.5, 0.75, 1.0]


def test_ig_requires_the_gradient_capability(toy, context):
    class NoGrad(ToyScorer):
        capabilities = ToyScorer.capabilities - {"ig_grad_projection"}

    with pytest.raises(CapabilityError):
        integrated_gradients(NoGrad(CORPUS), context, 3)


def test_ig_requires_a_mask(toy):
    no_mask = toy.tokenize("glass of water")
    with pytest.raises(ShapeError):
        integrated_gradients(toy, no_mask, 3)


def test_ig_validates_step_count(toy, context):
    with pytest.raises(ValueError):
        integrated_gradients(toy, context, 3, n_steps=0)


def test_ig_rejects_ragged_projections(toy, context):
    class Ragged(ToyScorer):
        def ig_grad_projection(self, token_ids, mask_position, target, alpha):
            return [0.0]

    with pytest.raises(ShapeError):
        integrated_gradients(Ragged(CORPUS), context, 3)


def test_word_aggregation_sums_subword_scores():
    got = aggregate_to_words([1.0, 2.0, 4.0, 8.0], [0, 0, 1, 3])
    assert got == [3.0, 4.0, 0.0, 8.0]


def test_word_aggregation_of_nothing():
    assert aggregate_to_words([], []) == []


def test_word_aggregation_checks_lengths():
    with pytest.raises(ShapeError):
        aggregate_to_words([1.0], [0, 1])


def test_top10_takes_largest_and_normalizes():
    scores = [(f"w{i}", float(i)) for i in range(12)]
    got = top10_normalize(scores)
    assert len(got) == 10
    assert [w for w, _ in got] == [f"w{i}" for i in range(11, 1, -1)]
    total = sum(range(2, 12))
    assert got[0][1] == pytest.approx(11 / total)
    assert sum(s for _, s in got) == pytest.approx(1.0)


def test_top10_breaks_ties_toward_earlier_words():
    got = top10_normalize([("a", 1.0), ("b", 1.0), ("c", 0.5)])
    assert [w for w, _ in got] == ["a", "b", "c"]


def test_top10_uniform_fallback_when_nothing_is_positive():
    got = top10_normalize([("a", 0.0), ("b", -1.0)])
    assert got == [("a", 0.5), ("b", 0.5)]


def test_top10_needs_input():
    with pytest.raises(ShapeError):
        top10_normalize([])


def test_attribute_builds_the_word_view(toy, context):
    glass = toy.vocab["glass"]
    result = attribute(toy, context, glass)
    assert result.n_steps == 25
    assert result.target == glass
    assert result.completeness_gap < 1e-9
    labels = [w for w, _ in result.word_scores]
    assert labels == ["he", "drank", "a", "@placeholder", "of", "water"]
    scores = dict(result.word_scores)
    assert scores["@placeholder"] == 0.0
    assert scores["of"] == 2.0  # two corpus documents pair "of" with "glass"
    assert sum(scores.values()) == pytest.approx(7.0)
    assert sum(s for _, s in result.top10) == pytest.approx(1.0)


def test_attribute_word_sums_conserve_token_mass(toy):
    # A multi-token word ("sky-blue") shares one offset; sums must agree.
    text = toy.tokenize("sky-blue water @placeholder")
    water = toy.vocab["water"]
    token_scores = integrated_gradients(toy, text, water)
    per_word = aggregate_to_words(token_scores, text.word_offsets)
    assert sum(per_word) == pytest.approx(sum(token_scores))
    assert len(per_word) == 3
