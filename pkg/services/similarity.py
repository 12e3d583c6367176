"""Cosines between pair versions, averaged over the ones at least as strong as the originals'."""
from __future__ import annotations

import logging
import math
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from framework.errors import ContractViolation, PairNotInRunError
from models.pair import PairVersions, WordPair
from models.similarity import SimilarityResult
from models.space import ProjectedSpace

logger = logging.getLogger(__name__)


def cosine(u: Sequence[float], v: Sequence[float]) -> float:
    """u.v / (|u| |v|); 0 when either vector is zero."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ContractViolation(f"cosine of vectors with different shapes {u.shape} and {v.shape}")
    norm = float(np.linalg.norm(u) * np.linalg.norm(v))
    if norm == 0.0:
        return 0.0
    return float(np.clip(np.dot(u, v) / norm, -1.0, 1.0))


def _vector(space: ProjectedSpace, pair: WordPair) -> Optional[np.ndarray]:
    return space.vector(pair.key)


def relational_similarity(pair1: PairVersions, pair2: PairVersions, space: ProjectedSpace) -> SimilarityResult:
    for versions in (pair1, pair2):
        if not space.contains(versions.original.key):
            raise PairNotInRunError(str(versions.original))

    vectors1 = [_vector(space, pair) for pair in pair1.versions]
    vectors2 = [_vector(space, pair) for pair in pair2.versions]
    considered = len(vectors1) * len(vectors2)

    if vectors1[0] is None and vectors2[0] is None:
        return SimilarityResult(value=0.0, cosines_considered=considered, n_qualifying=0, original_cosine=0.0)

    cosines = [
        0.0 if u is None or v is None else cosine(u, v)
        for u in vectors1
        for v in vectors2
    ]
    original = cosines[0]
    qualifying = [c for c in cosines if c >= original]
    # order-independent sum
    value = max(math.fsum(qualifying) / len(qualifying), original)
    logger.debug("%s ~ %s: original %.6f, %d/%d qualify, value %.6f",
                 pair1.original, pair2.original, original, len(qualifying), considered, value)
    return SimilarityResult(
        value=float(np.clip(value, -1.0, 1.0)),
        cosines_considered=considered,
        n_qualifying=len(qualifying),
        original_cosine=original,
    )


class LraMeasure:
    """Pair-similarity callable over one pipeline run; reversed input pairs use the reversed versions."""

    def __init__(self, space: ProjectedSpace, versions: Mapping[Tuple[str, str], PairVersions]):
        self.space = space
        self._versions: Dict[Tuple[str, str], PairVersions] = dict(versions)

    def versions_of(self, pair: WordPair) -> PairVersions:
        found = self._versions.get(pair.key)
        if found is not None:
            return found
        mirrored = self._versions.get((pair.b, pair.a))
        if mirrored is not None:
            return mirrored.reversed()
        raise PairNotInRunError(str(pair))

    def similarity(self, pair1: WordPair, pair2: WordPair) -> SimilarityResult:
        return relational_similarity(self.versions_of(pair1), self.versions_of(pair2), self.space)

    def __call__(self, pair1: WordPair, pair2: WordPair) -> float:
        return self.similarity(pair1, pair2).value
