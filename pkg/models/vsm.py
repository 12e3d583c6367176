from __future__ import annotations

from typing import List

from pydantic import BaseModel, Field, field_validator


class JoiningTermList(BaseModel):
    """Connectives J counted in "A J B" and "B J A"."""

    terms: List[str] = Field(..., min_length=1, json_schema_extra={"example": ["of", "for", "to"]})

    model_config = {"frozen": True}

    @field_validator("terms")
    @classmethod
    def _distinct(cls, terms: List[str]) -> List[str]:
        cleaned = [" ".join(term.lower().split()) for term in terms]
        if any(not term for term in cleaned):
            raise ValueError("joining terms must be non-empty")
        seen = set()
        for term in cleaned:
            if term in seen:
                raise ValueError(f"duplicate joining term '{term}'")
            seen.add(term)
        return cleaned

    def __len__(self) -> int:
        return len(self.terms)
