from __future__ import annotations

from typing import Dict, FrozenSet, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from models.matrix import RowMap

PairKey = Tuple[str, str]


class SvdResult(BaseModel):
    """Top-k singular triplets: X ~ U diag(singular_values) V^T."""

    U: np.ndarray = Field(..., description="rows x k, orthonormal columns.")
    singular_values: np.ndarray = Field(..., description="k non-increasing, non-negative values.")
    V: np.ndarray = Field(..., description="cols x k, orthonormal columns.")
    requested_k: int = Field(..., ge=1)

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @property
    def k(self) -> int:
        return int(self.singular_values.shape[0])

    def reconstruct(self) -> np.ndarray:
        return (self.U * self.singular_values) @ self.V.T


class ProjectedSpace(BaseModel):
    """Row vectors U_k Sigma_k, addressed by directed word pair."""

    vectors: np.ndarray
    row_map: RowMap
    dropped: FrozenSet[PairKey] = Field(default_factory=frozenset)
    singular_values: Optional[np.ndarray] = None

    _index: Dict[PairKey, int] = PrivateAttr(default_factory=dict)

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    def model_post_init(self, __context) -> None:
        self._index = self.row_map.index()

    @property
    def k(self) -> int:
        return int(self.vectors.shape[1])

    def contains(self, key: PairKey) -> bool:
        """True for any pair the run saw, with or without a row."""
        return key in self._index or key in self.dropped

    def vector(self, key: PairKey) -> Optional[np.ndarray]:
        row = self._index.get(key)
        return None if row is None else self.vectors[row]
