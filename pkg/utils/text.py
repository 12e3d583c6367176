"""Tokenizer and stemmer shared by the index, the pattern miner and the VSM baseline."""
from __future__ import annotations

import re
from functools import lru_cache
from typing import List

from nltk.stem import PorterStemmer

from framework.errors import ContractViolation

TOKEN_RE = re.compile(r"[^\W_]+")
# passages end at line breaks and sentence-final punctuation
PASSAGE_SPLIT_RE = re.compile(r"[\r\n.!?;]+")

_stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


def tokenize(text: str) -> List[str]:
    """Lowercase, then split on runs of non-alphanumeric characters. Digits stay tokens."""
    return TOKEN_RE.findall(text.lower())


def split_passages(text: str) -> List[List[str]]:
    passages = []
    for chunk in PASSAGE_SPLIT_RE.split(text):
        tokens = tokenize(chunk)
        if tokens:
            passages.append(tokens)
    return passages


@lru_cache(maxsize=None)
def stem(word: str) -> str:
    """Porter stem of a single lowercased word."""
    if not word:
        raise ContractViolation("cannot stem an empty word")
    return _stemmer.stem(word.lower(), to_lowercase=True)
