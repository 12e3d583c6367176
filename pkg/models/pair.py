from __future__ import annotations

from typing import List, Literal, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

PartOfSpeech = Literal["noun", "verb", "adj", "adv"]


class WordPair(BaseModel):
    """An ordered pair of words whose relation is measured."""

    a: str = Field(..., min_length=1, description="First word.", json_schema_extra={"example": "mason"})
    b: str = Field(..., min_length=1, description="Second word.", json_schema_extra={"example": "stone"})
    pos_a: PartOfSpeech = Field("noun", description="Part of speech of the first word.")
    pos_b: PartOfSpeech = Field("noun", description="Part of speech of the second word.")

    model_config = {
        "frozen": True,
        "json_schema_extra": {"examples": [{"a": "mason", "b": "stone", "pos_a": "noun", "pos_b": "noun"}]},
    }

    @field_validator("a", "b")
    @classmethod
    def _normalise(cls, value: str) -> str:
        value = value.strip().lower()
        if not value:
            raise ValueError("pair members must be non-empty")
        return value

    @model_validator(mode="after")
    def _distinct(self) -> "WordPair":
        if self.a == self.b:
            raise ValueError(f"pair members must differ: {self.a}:{self.b}")
        return self

    @property
    def key(self) -> Tuple[str, str]:
        return (self.a, self.b)

    def reversed(self) -> "WordPair":
        return WordPair(a=self.b, b=self.a, pos_a=self.pos_b, pos_b=self.pos_a)

    def __str__(self) -> str:
        return f"{self.a}:{self.b}"


class Alternate(BaseModel):
    """An alternate pair: the original with one member swapped for a thesaurus neighbour."""

    pair: WordPair
    replaced: Literal["a", "b"] = Field(..., description="Which member of the original was replaced.")
    rank: int = Field(..., ge=0, description="Thesaurus rank of the substitute (0 = most similar).")
    frequency: int = Field(0, ge=0, description="Corpus phrase frequency of the alternate pair.")

    model_config = {"frozen": True}


class PairVersions(BaseModel):
    """An original pair with the alternates that survived filtering."""

    original: WordPair
    alternates: List[Alternate] = Field(default_factory=list)

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _check_alternates(self) -> "PairVersions":
        previous = None
        for alt in self.alternates:
            same_a = alt.pair.a == self.original.a
            same_b = alt.pair.b == self.original.b
            if same_a == same_b:
                raise ValueError(f"alternate {alt.pair} must differ from {self.original} in exactly one position")
            if previous is not None and alt.frequency > previous:
                raise ValueError("alternates must be sorted by non-increasing frequency")
            previous = alt.frequency
        return self

    @property
    def versions(self) -> List[WordPair]:
        """The original first, then the alternates in kept order."""
        return [self.original] + [alt.pair for alt in self.alternates]

    def reversed(self) -> "PairVersions":
        flipped = {"a": "b", "b": "a"}
        return PairVersions(
            original=self.original.reversed(),
            alternates=[
                Alternate(pair=alt.pair.reversed(), replaced=flipped[alt.replaced], rank=alt.rank, frequency=alt.frequency)
                for alt in self.alternates
            ],
        )
