from __future__ import annotations

from typing import List, Tuple

from pydantic import BaseModel, Field, model_validator

from models.pair import PartOfSpeech


class Neighbor(BaseModel):
    word: str = Field(..., min_length=1)
    score: float = Field(..., gt=0.0, le=1.0, description="Attributional similarity to the headword.")

    model_config = {"frozen": True}


class ThesaurusEntry(BaseModel):
    headword: str = Field(..., min_length=1, json_schema_extra={"example": "dog"})
    pos: PartOfSpeech = Field(..., json_schema_extra={"example": "noun"})
    neighbors: List[Neighbor] = Field(
        default_factory=list,
        description="Words in order of decreasing attributional similarity.",
        json_schema_extra={"example": [{"word": "canine", "score": 0.31}, {"word": "puppy", "score": 0.28}]},
    )

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _check_neighbors(self) -> "ThesaurusEntry":
        previous = None
        for neighbor in self.neighbors:
            if neighbor.word == self.headword:
                raise ValueError(f"headword '{self.headword}' listed among its own neighbours")
            if previous is not None and neighbor.score > previous:
                raise ValueError(f"neighbours out of order at '{neighbor.word}' ({neighbor.score} > {previous})")
            previous = neighbor.score
        return self

    @property
    def key(self) -> Tuple[str, str]:
        return (self.headword, self.pos)
