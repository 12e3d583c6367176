from __future__ import annotations

from typing import List, Literal, Tuple

from pydantic import BaseModel, Field, model_validator

WILDCARD = "*"

Direction = Literal["forward", "reverse"]


class Pattern(BaseModel):
    """Intervening-word template; each slot is a literal token or WILDCARD matching one token."""

    slots: Tuple[str, ...] = Field(..., min_length=1, json_schema_extra={"example": ["of", "*"]})

    model_config = {"frozen": True}

    @classmethod
    def of(cls, *slots: str) -> "Pattern":
        return cls(slots=tuple(slots))

    @property
    def wildcards(self) -> int:
        return sum(1 for slot in self.slots if slot == WILDCARD)

    def __len__(self) -> int:
        return len(self.slots)

    def matches(self, tokens) -> bool:
        return len(tokens) == len(self.slots) and all(
            slot == WILDCARD or slot == token for slot, token in zip(self.slots, tokens)
        )

    def __str__(self) -> str:
        return " ".join(self.slots)


class Phrase(BaseModel):
    """Intervening tokens of one corpus occurrence; forward is a...b, reverse is b...a."""

    direction: Direction
    tokens: Tuple[str, ...]

    model_config = {"frozen": True}


class PatternSupport(BaseModel):
    pattern: Pattern
    support: int = Field(..., ge=1, description="Distinct pair versions with a matching phrase.")

    model_config = {"frozen": True}


class PatternTable(BaseModel):
    entries: List[PatternSupport] = Field(default_factory=list)

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _sorted(self) -> "PatternTable":
        for before, after in zip(self.entries, self.entries[1:]):
            if after.support > before.support:
                raise ValueError("pattern table must be sorted by non-increasing support")
        return self

    @property
    def patterns(self) -> List[Pattern]:
        return [entry.pattern for entry in self.entries]

    def support(self, pattern: Pattern) -> int:
        for entry in self.entries:
            if entry.pattern == pattern:
                return entry.support
        return 0

    def __len__(self) -> int:
        return len(self.entries)

    def to_tsv(self) -> str:
        return "".join(f"{entry.pattern}\t{entry.support}\n" for entry in self.entries)
