"""
Positional index over a plain-text corpus.

Every passage is a token list; the index maps each stem to the sorted
(doc_id, position) postings where it occurs. Queries are exact: every window
is checked, nothing is sampled.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from framework.artifacts import read_compressed_json, write_compressed_json
from framework.errors import ContractViolation, CorpusBuildError, IndexFormatError
from models.corpus import PhraseMatch, PhraseQuery
from utils.text import split_passages, stem, tokenize

logger = logging.getLogger(__name__)

INDEX_MAGIC = b"LRAIDX1\n"
INDEX_VERSION = 1

Posting = Tuple[int, int]


class Corpus:
    """Immutable once built: passages, their stems and the stem postings."""

    def __init__(self, documents: Sequence[Sequence[str]], sources: Sequence[str] = ()):
        self._documents: Tuple[Tuple[str, ...], ...] = tuple(tuple(doc) for doc in documents)
        self._sources = tuple(sources)
        self._stem_map: Dict[str, str] = {}
        postings: Dict[str, List[Posting]] = defaultdict(list)
        stems: List[Tuple[str, ...]] = []
        for doc_id, tokens in enumerate(self._documents):
            doc_stems = []
            for pos, token in enumerate(tokens):
                token_stem = self._stem_map.get(token)
                if token_stem is None:
                    token_stem = self._stem_map[token] = stem(token)
                doc_stems.append(token_stem)
                postings[token_stem].append((doc_id, pos))
            stems.append(tuple(doc_stems))
        self._stems = tuple(stems)
        self._postings = dict(postings)

    @property
    def documents(self) -> Tuple[Tuple[str, ...], ...]:
        return self._documents

    @property
    def sources(self) -> Tuple[str, ...]:
        return self._sources

    @property
    def token_count(self) -> int:
        return sum(len(doc) for doc in self._documents)

    def __len__(self) -> int:
        return len(self._documents)

    def __repr__(self) -> str:
        return f"Corpus(documents={len(self)}, tokens={self.token_count}, stems={len(self._postings)})"

    def postings(self, term_stem: str) -> List[Posting]:
        return self._postings.get(term_stem, [])

    def find_phrases(self, query: PhraseQuery) -> List[PhraseMatch]:
        """All windows left, then min_inter..max_inter tokens, then right; ordered by (doc_id, start_pos, length)."""
        matches: List[PhraseMatch] = []
        for doc_id, pos in self.postings(query.left):
            doc_stems = self._stems[doc_id]
            for gap in range(query.min_inter, query.max_inter + 1):
                end = pos + gap + 1
                if end >= len(doc_stems):
                    break
                if doc_stems[end] == query.right:
                    matches.append(
                        PhraseMatch(doc_id=doc_id, start_pos=pos, intervening=list(self._documents[doc_id][pos + 1:end]))
                    )
        return matches

    def count_phrases(self, left: str, right: str, min_inter: int, max_inter: int) -> int:
        """Number of matches `find_phrases` would return, without building them."""
        count = 0
        for doc_id, pos in self.postings(left):
            doc_stems = self._stems[doc_id]
            for gap in range(min_inter, max_inter + 1):
                end = pos + gap + 1
                if end >= len(doc_stems):
                    break
                if doc_stems[end] == right:
                    count += 1
        return count

    def count_sequence(self, left: str, middle: Sequence[str], right: str) -> int:
        """Occurrences of left-stem, the literal tokens `middle`, right-stem."""
        middle = tuple(middle)
        width = len(middle)
        count = 0
        for doc_id, pos in self.postings(left):
            end = pos + width + 1
            if end >= len(self._stems[doc_id]):
                continue
            if self._stems[doc_id][end] == right and self._documents[doc_id][pos + 1:end] == middle:
                count += 1
        return count

    def phrase_frequency(self, a: str, b: str, max_len: int) -> int:
        """Phrases a...b plus b...a of at most `max_len` tokens, endpoints stem-matched."""
        if max_len < 2:
            raise ContractViolation(f"max_len must be >= 2, got {max_len}")
        left, right = stem(a.lower()), stem(b.lower())
        total = self.count_phrases(left, right, 0, max_len - 2)
        if left != right:
            total += self.count_phrases(right, left, 0, max_len - 2)
        return total

    def to_payload(self) -> dict:
        return {"version": INDEX_VERSION, "sources": list(self._sources), "documents": [list(d) for d in self._documents]}

    def save(self, path: Union[str, Path]) -> bytes:
        data = write_compressed_json(path, INDEX_MAGIC, self.to_payload())
        logger.info("wrote index %s (%d passages, %d tokens)", path, len(self), self.token_count)
        return data

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Corpus":
        payload = read_compressed_json(path, INDEX_MAGIC)
        if payload.get("version") != INDEX_VERSION:
            raise IndexFormatError(f"{path}: unsupported index version {payload.get('version')!r}")
        return cls(payload["documents"], payload.get("sources", ()))


def _collect_files(inputs: Iterable[Union[str, Path]]) -> List[Path]:
    files: List[Path] = []
    for item in inputs:
        path = Path(item)
        if path.is_dir():
            files.extend(sorted(p for p in path.rglob("*") if p.is_file()))
        elif path.exists():
            files.append(path)
        else:
            raise CorpusBuildError(f"cannot read {path}: no such file or directory")
    return files


def build_index(raw_text_files: Union[str, Path, Iterable[Union[str, Path]]]) -> Corpus:
    """Tokenize files (or every file under directories) into a Corpus."""
    if isinstance(raw_text_files, (str, Path)):
        raw_text_files = [raw_text_files]
    files = _collect_files(raw_text_files)

    documents: List[List[str]] = []
    sources: List[str] = []
    for path in files:
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise CorpusBuildError(f"cannot read {path}: {exc}") from exc
        passages = split_passages(text)
        documents.extend(passages)
        sources.append(path.name)
        logger.debug("%s: %d passages", path, len(passages))

    if not documents:
        raise CorpusBuildError("empty corpus")
    corpus = Corpus(documents, sources)
    logger.info("built %r from %d files", corpus, len(files))
    return corpus


def find_phrases(corpus: Corpus, query: PhraseQuery) -> List[PhraseMatch]:
    return corpus.find_phrases(query)


def phrase_frequency(corpus: Corpus, a: str, b: str, max_len: int) -> int:
    return corpus.phrase_frequency(a, b, max_len)


def query_for(a: str, b: str, min_inter: int, max_inter: int) -> PhraseQuery:
    """Query for surface words, stemming both ends."""
    a_tokens, b_tokens = tokenize(a), tokenize(b)
    if len(a_tokens) != 1 or len(b_tokens) != 1:
        raise ContractViolation(f"phrase endpoints must be single words: {a!r}, {b!r}")
    return PhraseQuery(left=stem(a_tokens[0]), right=stem(b_tokens[0]), min_inter=min_inter, max_inter=max_inter)
