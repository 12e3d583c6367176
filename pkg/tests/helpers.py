"""Brute-force oracles and small file writers shared by the tests."""
from typing import Dict, FrozenSet, List, Sequence, Tuple

from utils.text import stem

_stem_sets: Dict[int, Tuple[Sequence[Sequence[str]], List[FrozenSet[str]]]] = {}


def write_lines(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _stem_sets_of(documents: Sequence[Sequence[str]]) -> List[FrozenSet[str]]:
    cached = _stem_sets.get(id(documents))
    if cached is None or cached[0] is not documents:
        cached = (documents, [frozenset(stem(token) for token in tokens) for tokens in documents])
        _stem_sets[id(documents)] = cached
    return cached[1]


def documents_with(documents: Sequence[Sequence[str]], *stems: str) -> List[Tuple[int, Sequence[str]]]:
    """(doc_id, tokens) of every document holding all the given stems."""
    wanted = frozenset(stems)
    return [(doc_id, documents[doc_id]) for doc_id, held in enumerate(_stem_sets_of(documents)) if wanted <= held]


def naive_windows(documents: Sequence[Sequence[str]], left: str, right: str, min_inter: int,
                  max_inter: int) -> List[Tuple[int, int, Tuple[str, ...]]]:
    """Every (doc, start, intervening) whose endpoints stem to `left` and `right`."""
    found = []
    for doc_id, tokens in documents_with(documents, left, right):
        for start in range(len(tokens)):
            for gap in range(min_inter, max_inter + 1):
                end = start + gap + 1
                if end < len(tokens) and stem(tokens[start]) == left and stem(tokens[end]) == right:
                    found.append((doc_id, start, tuple(tokens[start + 1:end])))
    return found
