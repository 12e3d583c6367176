"""
Pair-by-pattern matrix and its log-entropy weighting.

Row (a, b) reads phrases with word1 = a and word2 = b: a forward phrase of the
version (a...b) lands in the "12" column of each matching pattern and a reverse
phrase in the "21" column. Row (b, a) sees the same phrases with the
directions swapped, which makes the matrix invariant under swapping both.
"""
from __future__ import annotations

import logging
import math
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from models.matrix import ColumnMap, PairPatternMatrix, RowMap
from models.pair import PairVersions, WordPair
from models.pattern import Pattern, PatternTable, Phrase
from services.patterns import expand_slots, unique_versions

logger = logging.getLogger(__name__)

PairKey = Tuple[str, str]
Counts = Dict[Tuple[int, str], int]

_FLIP = {"12": "21", "21": "12"}


def _pattern_counts(phrases: Sequence[Phrase], columns: Mapping[Tuple[str, ...], int]) -> Counts:
    """(pattern index, direction as seen from the version's own a:b order) -> occurrences."""
    counts: Counts = {}
    for phrase in phrases:
        direction = "12" if phrase.direction == "forward" else "21"
        for slots in expand_slots(phrase.tokens):
            index = columns.get(slots)
            if index is not None:
                counts[(index, direction)] = counts.get((index, direction), 0) + 1
    return counts


def _version_counts(
    pair_versions: Iterable[PairVersions], phrases: Mapping[PairKey, Sequence[Phrase]], patterns: Sequence[Pattern]
) -> List[Tuple[WordPair, Counts]]:
    pattern_index = {pattern.slots: j for j, pattern in enumerate(patterns)}
    return [(pair, _pattern_counts(phrases.get(pair.key, ()), pattern_index)) for pair in unique_versions(pair_versions)]


def map_columns(pattern_table: PatternTable) -> ColumnMap:
    return ColumnMap(patterns=pattern_table.patterns)


def map_rows(
    pair_versions: Iterable[PairVersions], phrases: Mapping[PairKey, Sequence[Phrase]], pattern_table: PatternTable
) -> Tuple[RowMap, FrozenSet[PairKey]]:
    """Rows (a, b) and (b, a) for every version with a phrase matching a kept pattern; the rest are dropped."""
    keys: List[PairKey] = []
    dropped = set()
    for pair, counts in _version_counts(pair_versions, phrases, pattern_table.patterns):
        reverse = (pair.b, pair.a)
        if counts:
            keys.extend([pair.key, reverse])
        else:
            dropped.update({pair.key, reverse})
    return RowMap(keys=keys), frozenset(dropped)


def build_matrix(
    pair_versions: Iterable[PairVersions],
    phrases: Mapping[PairKey, Sequence[Phrase]],
    pattern_table: PatternTable,
    row_map: Optional[RowMap] = None,
    column_map: Optional[ColumnMap] = None,
) -> PairPatternMatrix:
    """Cell (i, j) counts the phrases of directed pair i matching column j's pattern in column j's direction."""
    pair_versions = list(pair_versions)
    column_map = column_map or map_columns(pattern_table)
    dropped: FrozenSet[PairKey] = frozenset()
    if row_map is None:
        row_map, dropped = map_rows(pair_versions, phrases, pattern_table)
    row_of = row_map.index()

    rows: List[int] = []
    cols: List[int] = []
    data: List[int] = []
    missing = set()
    for pair, counts in _version_counts(pair_versions, phrases, column_map.patterns):
        forward_row = row_of.get(pair.key)
        reverse_row = row_of.get((pair.b, pair.a))
        if forward_row is None or reverse_row is None:
            missing.update({pair.key, (pair.b, pair.a)})
            continue
        for (j, direction), count in sorted(counts.items()):
            rows.extend([forward_row, reverse_row])
            cols.extend([column_map.column(j, direction), column_map.column(j, _FLIP[direction])])
            data.extend([count, count])

    shape = (len(row_map), len(column_map))
    values = sparse.coo_matrix((np.asarray(data, dtype=np.float64), (rows, cols)), shape=shape).tocsr()
    values.sort_indices()
    matrix = PairPatternMatrix(
        values=values, row_map=row_map, column_map=column_map, dropped=frozenset(dropped | missing)
    )
    logger.info(
        "matrix %d x %d, %d non-zeros (density %.4f), %d directed pairs without a row",
        shape[0], shape[1], matrix.nnz, matrix.density, len(matrix.dropped),
    )
    return matrix


def entropy_weights(values: sparse.spmatrix) -> np.ndarray:
    """w_j = 1 + sum_i p_ij ln p_ij / ln n over each column, clipped to [0, 1]; empty columns get 0."""
    csc = sparse.csc_matrix(values, dtype=np.float64)
    n_rows, n_cols = csc.shape
    weights = np.zeros(n_cols, dtype=np.float64)
    log_n = math.log(n_rows) if n_rows > 1 else 0.0
    for j in range(n_cols):
        column = csc.data[csc.indptr[j]:csc.indptr[j + 1]]
        column = column[column > 0]
        if column.size == 0:
            continue
        if log_n == 0.0:
            weights[j] = 1.0
            continue
        p = column / column.sum()
        weights[j] = 1.0 + float(np.sum(p * np.log(p))) / log_n
    weights[np.abs(weights) < 1e-12] = 0.0
    return np.clip(weights, 0.0, 1.0)


def log_entropy_transform(matrix: PairPatternMatrix) -> PairPatternMatrix:
    """Replace each cell f by ln(f + 1) * w_j."""
    weights = entropy_weights(matrix.values)
    transformed = matrix.values.tocsr(copy=True).astype(np.float64)
    transformed.data = np.log1p(transformed.data) * weights[transformed.indices]
    transformed.eliminate_zeros()
    transformed.sort_indices()
    logger.info("log-entropy: %d of %d columns carry weight", int(np.count_nonzero(weights)), weights.size)
    return matrix.model_copy(update={"values": transformed, "weights": weights})
