"""
Ranked-synonym thesaurus.

File format, one entry per line:

    headword<TAB>pos<TAB>word:score,word:score,...

Scores are decimals in (0, 1], listed in non-increasing order. Blank lines
and lines starting with '#' are ignored.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, Iterator, List, Tuple, Union

from pydantic import ValidationError

from framework.errors import ContractViolation, InputError, ThesaurusFormatError
from models.thesaurus import Neighbor, ThesaurusEntry

logger = logging.getLogger(__name__)


class Thesaurus:
    def __init__(self, entries: Dict[Tuple[str, str], ThesaurusEntry]):
        self._entries = dict(entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[ThesaurusEntry]:
        return iter(self._entries.values())

    def entry(self, word: str, pos: str):
        return self._entries.get((word.lower(), pos))

    def top_similar(self, word: str, pos: str, n: int) -> List[str]:
        return [neighbor.word for neighbor in self.top_similar_scored(word, pos, n)]

    def top_similar_scored(self, word: str, pos: str, n: int) -> List[Neighbor]:
        if n < 1:
            raise ContractViolation(f"n must be >= 1, got {n}")
        found = self.entry(word, pos)
        if found is None:
            return []
        return list(found.neighbors[:n])


def _parse_neighbors(field: str, line_number: int) -> List[Neighbor]:
    neighbors = []
    for item in field.split(","):
        item = item.strip()
        if not item:
            continue
        word, sep, score = item.rpartition(":")
        if not sep or not word.strip():
            raise ThesaurusFormatError(f"expected word:score, got '{item}'", line_number)
        try:
            value = float(score)
        except ValueError:
            raise ThesaurusFormatError(f"bad score '{score}'", line_number) from None
        neighbors.append({"word": word.strip().lower(), "score": value})
    return neighbors


def parse_line(line: str, line_number: int) -> ThesaurusEntry:
    fields = line.rstrip("\r\n").split("\t")
    if len(fields) != 3:
        raise ThesaurusFormatError(f"expected 3 tab-separated fields, got {len(fields)}", line_number)
    headword, pos, neighbor_field = fields
    try:
        return ThesaurusEntry(
            headword=headword.strip().lower(),
            pos=pos.strip().lower(),
            neighbors=_parse_neighbors(neighbor_field, line_number),
        )
    except ValidationError as exc:
        reason = "; ".join(err["msg"] for err in exc.errors())
        raise ThesaurusFormatError(reason, line_number) from None


def load_thesaurus(file: Union[str, Path]) -> Thesaurus:
    path = Path(file)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read thesaurus {path}: {exc}") from exc

    entries: Dict[Tuple[str, str], ThesaurusEntry] = {}
    for line_number, line in enumerate(lines, start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        entry = parse_line(line, line_number)
        if entry.key in entries:
            raise ThesaurusFormatError(f"duplicate entry ({entry.headword}, {entry.pos})", line_number)
        entries[entry.key] = entry

    logger.info("loaded %d thesaurus entries from %s", len(entries), path)
    return Thesaurus(entries)


def top_similar(thesaurus: Thesaurus, word: str, pos: str, n: int) -> List[str]:
    return thesaurus.top_similar(word, pos, n)
