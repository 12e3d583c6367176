import pytest

from models.config import LraConfig
from resources.toy import write_toy_fixture
from services.corpus_index import build_index
from services.evaluation import load_questions
from services.pairspace import load_pairs
from services.pipeline import run_pipeline
from services.thesaurus import load_thesaurus


@pytest.fixture(scope="session")
def toy(tmp_path_factory):
    return write_toy_fixture(tmp_path_factory.mktemp("toy"))


@pytest.fixture(scope="session")
def toy_corpus(toy):
    return build_index(toy.corpus_dir)


@pytest.fixture(scope="session")
def toy_thesaurus(toy):
    return load_thesaurus(toy.thesaurus)


@pytest.fixture(scope="session")
def toy_pairs(toy):
    return load_pairs(toy.pairs)


@pytest.fixture(scope="session")
def toy_questions(toy):
    return load_questions(toy.questions)


@pytest.fixture(scope="session")
def toy_run(toy_corpus, toy_thesaurus, toy_pairs):
    return run_pipeline(LraConfig(), toy_corpus, toy_thesaurus, toy_pairs)
