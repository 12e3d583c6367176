from __future__ import annotations

from typing import Dict, FrozenSet, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import sparse

from models.pattern import Pattern

PairKey = Tuple[str, str]
ColumnDirection = Literal["12", "21"]  # word1 P word2 / word2 P word1


class RowMap(BaseModel):
    """Dense row numbering of directed pairs; each version owns its (a, b) and (b, a) rows."""

    keys: List[PairKey] = Field(default_factory=list)

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _both_orders(self) -> "RowMap":
        present = set(self.keys)
        if len(present) != len(self.keys):
            raise ValueError("row map contains duplicate pairs")
        missing = [key for key in self.keys if (key[1], key[0]) not in present]
        if missing:
            raise ValueError(f"row map lacks the reverse of {missing[0]}")
        return self

    def index(self) -> Dict[PairKey, int]:
        return {key: row for row, key in enumerate(self.keys)}

    def __len__(self) -> int:
        return len(self.keys)


class ColumnMap(BaseModel):
    """Columns 2j and 2j+1 are pattern j in directions 12 and 21."""

    patterns: List[Pattern] = Field(default_factory=list)

    model_config = {"frozen": True}

    def column(self, pattern_index: int, direction: ColumnDirection) -> int:
        return 2 * pattern_index + (0 if direction == "12" else 1)

    def __len__(self) -> int:
        return 2 * len(self.patterns)


class PairPatternMatrix(BaseModel):
    """Sparse pair-by-pattern matrix in CSR form, with its maps and the versions that had no row."""

    values: sparse.csr_matrix
    row_map: RowMap
    column_map: ColumnMap
    dropped: FrozenSet[PairKey] = Field(default_factory=frozenset, description="Directed pairs with all-zero rows.")
    weights: Optional[np.ndarray] = Field(None, description="Column weights once log-entropy has been applied.")

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape

    @property
    def nnz(self) -> int:
        return int(self.values.nnz)

    @property
    def density(self) -> float:
        rows, cols = self.shape
        return self.nnz / float(rows * cols) if rows and cols else 0.0

    def cell(self, row: int, col: int) -> float:
        return float(self.values[row, col])

    def to_coordinate_text(self) -> str:
        """One `row<TAB>col<TAB>value` line per stored cell, row-major."""
        coo = self.values.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return "".join(f"{coo.row[i]}\t{coo.col[i]}\t{coo.data[i]!r}\n" for i in order)
