"""
Vector Space Model baseline.

A pair A:B becomes 2 x |terms| numbers: for every joining term J the counts of
"A J B" and "B J A" in the corpus, each stored as ln(count + 1). Endpoints are
stem-matched like every other corpus query; the joining tokens are literal.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

import numpy as np
from pydantic import ValidationError

from framework.errors import InputError
from models.pair import WordPair
from models.vsm import JoiningTermList
from resources import JOINING_TERMS_FILE
from services.corpus_index import Corpus
from services.similarity import cosine
from utils.text import stem, tokenize

logger = logging.getLogger(__name__)


def load_terms(file: Optional[Union[str, Path]] = None) -> JoiningTermList:
    path = Path(file) if file is not None else JOINING_TERMS_FILE
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read joining terms {path}: {exc}") from exc
    try:
        return JoiningTermList(terms=[line for line in lines if line.strip()])
    except ValidationError as exc:
        raise InputError(f"{path}: {exc.errors()[0]['msg']}") from None


def vsm_vector(pair: WordPair, corpus: Corpus, terms: JoiningTermList) -> np.ndarray:
    a, b = stem(pair.a), stem(pair.b)
    vector = np.zeros(2 * len(terms), dtype=np.float64)
    for i, term in enumerate(terms.terms):
        middle = tokenize(term)
        vector[2 * i] = np.log1p(corpus.count_sequence(a, middle, b))
        vector[2 * i + 1] = np.log1p(corpus.count_sequence(b, middle, a))
    return vector


def vsm_similarity(pair1: WordPair, pair2: WordPair, corpus: Corpus, terms: JoiningTermList) -> float:
    return cosine(vsm_vector(pair1, corpus, terms), vsm_vector(pair2, corpus, terms))


class VsmMeasure:
    """Pair-similarity callable for the evaluation harness; vectors are computed once per pair."""

    def __init__(self, corpus: Corpus, terms: JoiningTermList):
        self.corpus = corpus
        self.terms = terms
        self._vectors: Dict[Tuple[str, str], np.ndarray] = {}

    def vector(self, pair: WordPair) -> np.ndarray:
        found = self._vectors.get(pair.key)
        if found is None:
            found = self._vectors[pair.key] = vsm_vector(pair, self.corpus, self.terms)
        return found

    def __call__(self, pair1: WordPair, pair2: WordPair) -> float:
        return cosine(self.vector(pair1), self.vector(pair2))
