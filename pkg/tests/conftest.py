import pytest

import lexfixture
import toyfixture
from abscloze import lexdb
from abscloze.config import Config
from abscloze.toyscorer import toy_scorer_build

# Filled by the gates in test_acceptance.py; printed after the run so the
# verdicts survive output capture.
ACCEPTANCE_VERDICTS: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def mini_db(tmp_path_factory):
    directory, senti, freq = lexfixture.write_wordnet_files(
        tmp_path_factory.mktemp("mini-wn"),
        lexfixture.MINI_SYNSETS,
        lexfixture.MINI_FREQ,
    )
    return lexdb.load(directory, senti, freq)


@pytest.fixture(scope="session")
def ext_db(tmp_path_factory):
    directory, senti, freq = lexfixture.write_wordnet_files(
        tmp_path_factory.mktemp("ext-wn"),
        lexfixture.EXT_SYNSETS,
        lexfixture.EXT_FREQ,
    )
    return lexdb.load(directory, senti, freq)


def ext_id(key: str) -> str:
    return lexfixture.synset_id(lexfixture.EXT_SYNSETS, key)


def mini_id(key: str) -> str:
    return lexfixture.synset_id(lexfixture.MINI_SYNSETS, key)


@pytest.fixture(scope="session")
def vote_backend():
    return toy_scorer_build(toyfixture.VOTE_CORPUS, max_len=toyfixture.VOTE_MAX_LEN)


@pytest.fixture(scope="session")
def vote_samples():
    return toyfixture.build_vote_samples()


@pytest.fixture
def vote_config():
    return Config(
        strategy="voting",
        weighting="exact",
        max_len=toyfixture.VOTE_MAX_LEN,
        stride=toyfixture.VOTE_STRIDE,
    )


@pytest.fixture(scope="session")
def hypo_backend():
    return toy_scorer_build(toyfixture.HYPO_CORPUS, max_len=64)
