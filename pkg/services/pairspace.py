"""Alternate pairs: thesaurus substitution, then corpus-frequency filtering."""
from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Union

from pydantic import ValidationError

from framework.errors import ContractViolation, DatasetFormatError, InputError
from models.pair import Alternate, PairVersions, WordPair
from services.corpus_index import Corpus
from services.thesaurus import Thesaurus

logger = logging.getLogger(__name__)


def generate_alternates(pair: WordPair, thesaurus: Thesaurus, num_sim: int) -> List[Alternate]:
    """A':B for each neighbour A' of A, then A:B' for each neighbour B' of B."""
    if num_sim < 1:
        raise ContractViolation(f"num_sim must be >= 1, got {num_sim}")
    candidates: List[Alternate] = []
    for rank, word in enumerate(thesaurus.top_similar(pair.a, pair.pos_a, num_sim)):
        if word in (pair.a, pair.b):
            continue
        candidates.append(
            Alternate(pair=WordPair(a=word, b=pair.b, pos_a=pair.pos_a, pos_b=pair.pos_b), replaced="a", rank=rank)
        )
    for rank, word in enumerate(thesaurus.top_similar(pair.b, pair.pos_b, num_sim)):
        if word in (pair.a, pair.b):
            continue
        candidates.append(
            Alternate(pair=WordPair(a=pair.a, b=word, pos_a=pair.pos_a, pos_b=pair.pos_b), replaced="b", rank=rank)
        )
    return candidates


def filter_alternates(
    original: WordPair,
    candidates: List[Alternate],
    corpus: Corpus,
    num_filter: int,
    max_phrase: int,
) -> PairVersions:
    """Keep the `num_filter` most frequent candidates; zero-frequency candidates never survive."""
    scored = []
    for candidate in candidates:
        frequency = corpus.phrase_frequency(candidate.pair.a, candidate.pair.b, max_phrase)
        if frequency > 0:
            scored.append(candidate.model_copy(update={"frequency": frequency}))
    scored.sort(key=lambda alt: (-alt.frequency, alt.rank, alt.pair.a, alt.pair.b))

    kept = scored[:num_filter]
    logger.debug(
        "%s: %d candidates, %d with phrases, kept %s",
        original, len(candidates), len(scored), [str(alt.pair) for alt in kept],
    )
    return PairVersions(original=original, alternates=kept)


def expand_pair(pair: WordPair, thesaurus: Thesaurus, corpus: Corpus, num_sim: int, num_filter: int,
                max_phrase: int) -> PairVersions:
    return filter_alternates(pair, generate_alternates(pair, thesaurus, num_sim), corpus, num_filter, max_phrase)


def parse_pair(line: str, line_number: int) -> WordPair:
    """`a b` or `a b pos_a pos_b`."""
    fields = line.split()
    if len(fields) not in (2, 4):
        raise DatasetFormatError(f"expected 'a b' or 'a b pos_a pos_b', got '{line.strip()}'", line_number)
    data = {"a": fields[0], "b": fields[1]}
    if len(fields) == 4:
        data.update(pos_a=fields[2].lower(), pos_b=fields[3].lower())
    try:
        return WordPair(**data)
    except ValidationError as exc:
        raise DatasetFormatError(exc.errors()[0]["msg"], line_number) from None


def load_pairs(file: Union[str, Path]) -> List[WordPair]:
    """One pair per line; blank lines and '#' comments are skipped."""
    path = Path(file)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read pairs {path}: {exc}") from exc
    return [
        parse_pair(line, number)
        for number, line in enumerate(lines, start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
