"""
Phrase harvesting and pattern mining.

Endpoints are matched on stems; the intervening tokens stay surface forms.
A phrase with m intervening tokens yields 2^m patterns, one per wildcard
subset. A pattern's support is the number of distinct pair versions having at
least one matching phrase.
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from typing import Dict, Iterable, List, Mapping, Sequence, Set, Tuple

from framework.errors import ContractViolation
from models.pair import PairVersions, WordPair
from models.pattern import WILDCARD, Pattern, PatternSupport, PatternTable, Phrase
from services.corpus_index import Corpus, query_for

logger = logging.getLogger(__name__)

PairKey = Tuple[str, str]
SlotTuple = Tuple[str, ...]


def unique_versions(pair_versions: Iterable[PairVersions]) -> List[WordPair]:
    """Every pair version once, in input order; a reversed duplicate counts as seen."""
    seen: Set[PairKey] = set()
    ordered: List[WordPair] = []
    for versions in pair_versions:
        for pair in versions.versions:
            if pair.key in seen or (pair.b, pair.a) in seen:
                continue
            seen.add(pair.key)
            ordered.append(pair)
    return ordered


def phrases_for(pair: WordPair, corpus: Corpus, min_inter: int, max_inter: int) -> List[Phrase]:
    """Forward then reverse phrases; none for a pair whose members are not single corpus tokens."""
    try:
        forward = query_for(pair.a, pair.b, min_inter, max_inter)
    except ContractViolation:
        logger.warning("no phrases for %s: members must each be a single word", pair)
        return []
    phrases = [Phrase(direction="forward", tokens=tuple(m.intervening)) for m in corpus.find_phrases(forward)]
    if forward.left != forward.right:
        reverse = query_for(pair.b, pair.a, min_inter, max_inter)
        phrases.extend(Phrase(direction="reverse", tokens=tuple(m.intervening)) for m in corpus.find_phrases(reverse))
    return phrases


def harvest_phrases(
    pair_versions: Iterable[PairVersions], corpus: Corpus, min_inter: int, max_inter: int
) -> Dict[PairKey, List[Phrase]]:
    harvested: Dict[PairKey, List[Phrase]] = {}
    for pair in unique_versions(pair_versions):
        harvested[pair.key] = phrases_for(pair, corpus, min_inter, max_inter)
    total = sum(len(phrases) for phrases in harvested.values())
    logger.info("harvested %d phrases for %d pair versions", total, len(harvested))
    return harvested


def expand_slots(tokens: Sequence[str]) -> List[SlotTuple]:
    """Every wildcard subset of `tokens` as raw slot tuples."""
    choices = [(token, WILDCARD) for token in tokens]
    return [tuple(combo) for combo in itertools.product(*choices)]


def expand_patterns(tokens: Sequence[str], max_inter: int = 3) -> Set[Pattern]:
    if not 1 <= len(tokens) <= max_inter:
        raise ContractViolation(f"phrase must have 1..{max_inter} intervening tokens, got {len(tokens)}")
    return {Pattern(slots=slots) for slots in expand_slots(tokens)}


def _tie_key(slots: SlotTuple) -> Tuple[int, SlotTuple]:
    return (sum(1 for slot in slots if slot == WILDCARD), slots)


def mine_top_patterns(phrases: Mapping[PairKey, Sequence[Phrase]], num_patterns: int) -> PatternTable:
    support: Counter = Counter()
    for pair_phrases in phrases.values():
        pair_patterns: Set[SlotTuple] = set()
        for phrase in pair_phrases:
            pair_patterns.update(expand_slots(phrase.tokens))
        support.update(pair_patterns)

    ranked = sorted(support.items(), key=lambda item: (-item[1],) + _tie_key(item[0]))
    kept = ranked[:num_patterns]
    logger.info("mined %d distinct patterns, kept %d", len(support), len(kept))
    return PatternTable(entries=[PatternSupport(pattern=Pattern(slots=slots), support=count) for slots, count in kept])
