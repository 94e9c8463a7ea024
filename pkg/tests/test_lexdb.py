import pytest

import lexfixture
import oracles
from abscloze import lexdb
from abscloze.errors import (
    LexParseError,
    LinkError,
    NoSenseError,
    UnknownSynsetError,
)
from abscloze.textutil import STOPWORDS
from conftest import ext_id, mini_id
from lexfixture import EXT_SYNSETS, MINI_FREQ, MINI_SYNSETS, Syn


# -- parsing ----------------------------------------------------------------


def test_mini_database_loads_every_synset(mini_db):
    assert len(mini_db) == len(MINI_SYNSETS)
    dog = mini_db.synset(mini_id("dog"))
    assert dog.lemmas == ("dog",)
    assert dog.pos == "n"
    assert "genus canis" in dog.gloss


def test_synset_ids_are_pos_letter_plus_offset(ext_db):
    assert ext_id("entity") == "n00000100"
    assert ext_id("drink_v").startswith("v")
    assert ext_db.synset(ext_id("drink_v")).pos == "v"


def test_satellite_adjectives_share_the_adjective_offset_space(ext_db):
    glad = ext_db.synset(ext_id("glad"))
    assert glad.id.startswith("a")
    assert glad.pos == "a"
    assert glad.ss_type == "s"


def test_multiword_lemmas_are_underscored(ext_db):
    dog = ext_db.synset(ext_id("dog"))
    assert dog.lemmas == ("dog", "domestic_dog")


def test_header_lines_are_skipped(tmp_path):
    # The fixture writer always emits a leading space-prefixed header line;
    # loading succeeding at all proves headers are not parsed as records.
    directory, _, _ = lexfixture.write_wordnet_files(tmp_path, MINI_SYNSETS)
    header = (directory / "data.noun").read_text().splitlines()[0]
    assert header.startswith(" ")
    assert len(lexdb.load(directory)) == len(MINI_SYNSETS)


def test_missing_noun_data_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        lexdb.load(tmp_path)


def test_truncated_pointer_record_names_file_and_line(tmp_path):
    directory, _, _ = lexfixture.write_wordnet_files(tmp_path, MINI_SYNSETS)
    data = directory / "data.noun"
    lines = data.read_text().splitlines(keepends=True)
    # Claim two pointers but supply none.
    lines.append("00009900 05 n 01 broken 0 002 | a broken record\n")
    data.write_text("".join(lines))
    with pytest.raises(LexParseError) as exc_info:
        lexdb.load(directory)
    assert exc_info.value.line_no == len(lines)
    assert "data.noun" in exc_info.value.path


def test_bad_word_count_names_file_and_line(tmp_path):
    directory, _, _ = lexfixture.write_wordnet_files(tmp_path, MINI_SYNSETS)
    data = directory / "data.noun"
    data.write_text(
        data.read_text() + "00009900 05 n zz broken 0 000 | not hex\n"
    )
    with pytest.raises(LexParseError, match="data.noun"):
        lexdb.load(directory)


def test_dangling_pointer_names_both_synsets(tmp_path):
    directory, _, _ = lexfixture.write_wordnet_files(tmp_path, MINI_SYNSETS)
    data = directory / "data.noun"
    data.write_text(
        data.read_text()
        + "00009900 05 n 01 orphan 0 001 @ 99999999 n 0000 | points nowhere\n"
    )
    with pytest.raises(LinkError) as exc_info:
        lexdb.load(directory)
    assert "n00009900" in str(exc_info.value)
    assert "n99999999" in str(exc_info.value)


def test_index_entry_for_missing_synset_raises(tmp_path):
    directory, _, _ = lexfixture.write_wordnet_files(tmp_path, MINI_SYNSETS)
    index = directory / "index.noun"
    index.write_text(index.read_text() + "ghost n 1 0 1 0 99999999\n")
    with pytest.raises(LinkError, match="ghost"):
        lexdb.load(directory)


def test_one_directional_pointers_are_completed(tmp_path):
    directory, _, _ = lexfixture.write_wordnet_files(
        tmp_path, MINI_SYNSETS, include_hyponym_pointers=False
    )
    db = lexdb.load(directory)
    dog, terrier = mini_id("dog"), mini_id("terrier")
    assert terrier in db.synset(dog).hyponym_ids
    assert dog in db.synset(terrier).hypernym_ids


def test_loading_twice_gives_equal_databases(tmp_path):
    directory, senti, freq = lexfixture.write_wordnet_files(
        tmp_path, EXT_SYNSETS, lexfixture.EXT_FREQ
    )
    assert lexdb.load(directory, senti, freq) == lexdb.load(directory, senti, freq)


# -- sense lookup -----------------------------------------------------------


def test_senses_come_back_in_rank_order(ext_db):
    ranked = [s.id for s in ext_db.senses("drink", "n")]
    assert ranked == [ext_id("drink_beverage"), ext_id("drink_sea")]


def test_senses_without_pos_pool_all_parts_of_speech(ext_db):
    pooled = [s.id for s in ext_db.senses("drink")]
    assert pooled == [
        ext_id("drink_beverage"),
        ext_id("drink_sea"),
        ext_id("drink_v"),
    ]


def test_senses_normalize_multiword_lookups(ext_db):
    assert [s.id for s in ext_db.senses("Domestic  Dog")] == [ext_id("dog")]


def test_absent_word_has_no_senses(ext_db):
    assert ext_db.senses("zzzghost") == []


def test_unknown_synset_lookup_raises(ext_db):
    with pytest.raises(UnknownSynsetError):
        ext_db.synset("n99999999")


# -- taxonomy ---------------------------------------------------------------


def test_direct_hyponyms(ext_db):
    kids = {s.id for s in ext_db.hyponyms(ext_id("dog"))}
    assert kids == {ext_id("terrier"), ext_id("mutt")}


def test_direct_hypernyms(ext_db):
    parents = {s.id for s in ext_db.hypernyms(ext_id("mutt"))}
    assert parents == {ext_id("dog"), ext_id("pet"), ext_id("animal")}


def test_relation_symmetry_across_whole_database(ext_db):
    for sid, syn in ext_db.synsets.items():
        for parent in syn.hypernym_ids:
            assert sid in ext_db.synset(parent).hyponym_ids
        for child in syn.hyponym_ids:
            assert sid in ext_db.synset(child).hypernym_ids


def test_depth_examples(ext_db):
    assert ext_db.depth(ext_id("entity")) == 0
    assert ext_db.depth(ext_id("animal")) == 1
    assert ext_db.depth(ext_id("dog")) == 2
    assert ext_db.depth(ext_id("terrier")) == 3
    assert ext_db.depth(ext_id("drink_sea")) == 3


def test_depth_uses_shortest_path_over_multiple_parents(ext_db):
    # mutt's parents sit at depths 2 (dog), 2 (pet), and 1 (animal); the
    # shortest hypernym path goes through animal.
    assert ext_db.depth(ext_id("mutt")) == 2


def test_depth_matches_bfs_oracle_for_every_synset(ext_db):
    edges = {sid: list(s.hypernym_ids) for sid, s in ext_db.synsets.items()}
    for sid in ext_db.synsets:
        assert ext_db.depth(sid) == oracles.bfs_depth_oracle(edges, sid)


def test_depth_of_rootless_cycle_raises(tmp_path):
    synsets = [
        Syn("entity", "the root"),
        Syn("cyc1", "one half of a cycle", hypernyms=("cyc2",)),
        Syn("cyc2", "other half of a cycle", hypernyms=("cyc1",)),
    ]
    directory, _, _ = lexfixture.write_wordnet_files(tmp_path, synsets)
    db = lexdb.load(directory)
    with pytest.raises(LinkError, match="no root"):
        db.depth(lexfixture.synset_id(synsets, "cyc1"))


# -- sentiment and frequency ------------------------------------------------


def test_senti_scores_fill_in_objectivity(ext_db):
    beer = ext_db.senti_scores(ext_id("beer"))
    assert (beer.pos, beer.neg, beer.obj) == (0.25, 0.0, 0.75)
    sadness = ext_db.senti_scores(ext_id("sadness"))
    assert (sadness.pos, sadness.neg, sadness.obj) == (0.0, 0.75, 0.25)


def test_synsets_without_a_senti_row_are_neutral(ext_db):
    scores = ext_db.senti_scores(ext_id("cat"))
    assert (scores.pos, scores.neg, scores.obj) == (0.0, 0.0, 1.0)


def test_out_of_range_senti_rows_are_rejected(tmp_path):
    directory, senti, _ = lexfixture.write_wordnet_files(tmp_path, MINI_SYNSETS)
    senti.write_text("n\t00000300\t0.8\t0.5\tdog#1\tgloss\n")
    with pytest.raises(LexParseError, match="out of range"):
        lexdb.load(directory, senti)


def test_senti_comment_lines_are_skipped(tmp_path):
    directory, senti, _ = lexfixture.write_wordnet_files(tmp_path, EXT_SYNSETS)
    assert senti.read_text().startswith("#")
    db = lexdb.load(directory, senti)
    assert db.senti_scores(ext_id("joy")).pos == 0.875


def test_frequency_table_lookup(ext_db):
    assert ext_db.freq("the") == 1000
    assert ext_db.freq("terrier") == 8
    assert ext_db.freq("zzzghost") == 0


def test_frequency_falls_back_to_tag_count_sums(tmp_path):
    directory, _, _ = lexfixture.write_wordnet_files(tmp_path, EXT_SYNSETS)
    db = lexdb.load(directory)  # no frequency file
    # "drink" is tagged 15 times as the beverage and 2 as the sea.
    assert db.freq("drink") == 17
    assert db.freq("dog") == 40
    assert db.freq("entity") == 0


def test_tag_counts_attach_to_the_right_lemma(ext_db):
    dog = ext_db.synset(ext_id("dog"))
    assert dog.tag_count("dog") == 40
    assert dog.tag_count("domestic_dog") == 0


# -- morphology -------------------------------------------------------------

MORPHY_CASES = [
    ("dog", "dog"),
    ("dogs", "dog"),
    ("terriers", "terrier"),
    ("glasses", "glass"),
    ("banks", "bank"),
    ("drinks", "drink"),
    ("waters", "water"),
    ("DOGS", "dog"),
    ("happiness", None),
    ("s", None),
]


@pytest.mark.parametrize("surface,expected", MORPHY_CASES)
def test_morphy_noun_resolution(ext_db, surface, expected):
    assert ext_db.morphy(surface) == expected


def test_morphy_respects_pos(ext_db):
    assert ext_db.morphy("happy", "a") == "happy"
    assert ext_db.morphy("happy", "n") is None


# -- gloss-overlap disambiguation --------------------------------------------

LESK_CASES = [
    # (word, context sentence, expected synset key)
    ("drink", "He poured a bitter glass of ale", "drink_beverage"),
    ("drink", "The sailors feared the deep water", "drink_sea"),
    ("drink", "Nothing relevant whatsoever", "drink_beverage"),  # 0-0 tie
    ("drink", "The sailors held a glass", "drink_beverage"),  # 1-1 tie
    ("drink", "Falling overboard is what sailors fear", "drink_sea"),
    ("drink", "a single serving please", "drink_beverage"),
    ("bank", "He deposited money at the counter", "bank_institution"),
    ("bank", "The river side was muddy and sloping", "bank_river"),
    ("bank", "Deposits were accepted", "bank_institution"),
    ("bank", "A deposit was made", "bank_river"),  # no stemming: 0-0 tie
    ("glass", "He was holding liquids in it", "glass_vessel"),
    ("glass", "The window was a transparent solid made of sand", "glass_material"),
    ("glass", "It was brittle in his container", "glass_vessel"),  # 1-1 tie
]


@pytest.mark.parametrize("word,context,expected_key", LESK_CASES)
def test_gloss_overlap_picks_the_expected_sense(ext_db, word, context, expected_key):
    chosen = ext_db.lesk_disambiguate(word, context.split())
    assert chosen.id == ext_id(expected_key)


@pytest.mark.parametrize("word,context,expected_key", LESK_CASES)
def test_gloss_overlap_agrees_with_the_oracle(ext_db, word, context, expected_key):
    senses = ext_db.senses(word, "n")
    want = oracles.lesk_oracle(
        [s.gloss for s in senses], context.split(), STOPWORDS
    )
    chosen = ext_db.lesk_disambiguate(word, context.split())
    assert senses.index(chosen) == want


def test_disambiguating_a_senseless_word_raises(ext_db):
    with pytest.raises(NoSenseError):
        ext_db.lesk_disambiguate("happy", ["anything"])  # adjective only
    with pytest.raises(NoSenseError):
        ext_db.lesk_disambiguate("zzzghost", ["anything"])


def test_mini_frequency_file_wins_over_tag_counts(mini_db):
    # MINI_FREQ says 120 even though the tag counts sum to 42.
    assert MINI_FREQ["dog"] == 120
    assert mini_db.freq("dog") == 120
