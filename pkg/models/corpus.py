from __future__ import annotations

from typing import List

from pydantic import BaseModel, Field, model_validator


class PhraseQuery(BaseModel):
    """Left stem, then min_inter..max_inter tokens, then right stem."""

    left: str = Field(..., min_length=1, description="Stem of the first word.")
    right: str = Field(..., min_length=1, description="Stem of the last word.")
    min_inter: int = Field(1, ge=0, description="Fewest intervening tokens.")
    max_inter: int = Field(3, ge=0, description="Most intervening tokens.")

    model_config = {
        "frozen": True,
        "json_schema_extra": {"examples": [{"left": "food", "right": "plant", "min_inter": 1, "max_inter": 3}]},
    }

    @model_validator(mode="after")
    def _check_bounds(self) -> "PhraseQuery":
        if self.max_inter < self.min_inter:
            raise ValueError("max_inter must be >= min_inter")
        return self


class PhraseMatch(BaseModel):
    doc_id: int = Field(..., ge=0, description="Passage number.")
    start_pos: int = Field(..., ge=0, description="Position of the left word in the passage.")
    intervening: List[str] = Field(default_factory=list, description="Surface tokens between the endpoints.")

    model_config = {"frozen": True}

    @property
    def end_pos(self) -> int:
        return self.start_pos + len(self.intervening) + 1
