import math

import numpy as np
import pytest

from framework.errors import InputError
from models.pair import WordPair
from models.vsm import JoiningTermList
from services.vsm import VsmMeasure, load_terms, vsm_similarity, vsm_vector
from services.similarity import cosine
from tests.helpers import documents_with, write_lines
from utils.text import stem, tokenize


def naive_sequence_count(documents, left, middle, right):
    width = len(middle)
    count = 0
    for tokens in documents:
        for start in range(len(tokens) - width - 1):
            end = start + width + 1
            if stem(tokens[start]) == left and tuple(tokens[start + 1:end]) == middle and stem(tokens[end]) == right:
                count += 1
    return count


def test_default_terms_are_bundled():
    terms = load_terms()
    assert len(terms) == 64
    assert terms.terms[:3] == ["of", "for", "to"]


def test_terms_are_normalised_and_unique(tmp_path):
    assert load_terms(write_lines(tmp_path / "t.txt", ["Such  As", "of"])).terms == ["such as", "of"]
    with pytest.raises(InputError, match="duplicate"):
        load_terms(write_lines(tmp_path / "dup.txt", ["of", "OF"]))
    with pytest.raises(InputError):
        load_terms(tmp_path / "missing.txt")


def test_vector_counts_both_orders(toy_corpus):
    terms = JoiningTermList(terms=["utters a", "of", "uttered by the"])
    vector = vsm_vector(WordPair(a="cat", b="meow"), toy_corpus, terms)
    np.testing.assert_allclose(vector, [math.log(5), 0.0, 0.0, 0.0, 0.0, math.log(5)], rtol=0, atol=1e-12)


def test_toy_vectors_match_full_scan(toy_corpus, toy_pairs):
    terms = load_terms()
    for pair in toy_pairs[::7]:
        documents = [tokens for _, tokens in documents_with(toy_corpus.documents, stem(pair.a), stem(pair.b))]
        expected = []
        for term in terms.terms:
            middle = tuple(tokenize(term))
            expected.append(math.log1p(naive_sequence_count(documents, stem(pair.a), middle, stem(pair.b))))
            expected.append(math.log1p(naive_sequence_count(documents, stem(pair.b), middle, stem(pair.a))))
        np.testing.assert_allclose(vsm_vector(pair, toy_corpus, terms), expected, rtol=0, atol=1e-12)


def test_similarity_recomputes_from_vectors(toy_corpus):
    terms = JoiningTermList(terms=["utters a", "carves the", "uttered by the", "a"])
    cat, dog, mason = WordPair(a="cat", b="meow"), WordPair(a="dog", b="bark"), WordPair(a="mason", b="stone")
    assert vsm_similarity(cat, dog, toy_corpus, terms) == pytest.approx(1.0, abs=1e-12)
    assert vsm_similarity(cat, mason, toy_corpus, terms) == 0.0

    measure = VsmMeasure(toy_corpus, terms)
    expected = cosine(vsm_vector(cat, toy_corpus, terms), vsm_vector(mason, toy_corpus, terms))
    assert measure(cat, mason) == pytest.approx(expected, abs=1e-12)
    assert measure.vector(cat) is measure.vector(cat)


def test_unseen_pair_has_zero_similarity(toy_corpus):
    terms = load_terms()
    assert vsm_similarity(WordPair(a="zebra", b="stripe"), WordPair(a="cat", b="meow"), toy_corpus, terms) == 0.0
