from __future__ import annotations

from pydantic import BaseModel, Field


class SimilarityResult(BaseModel):
    value: float = Field(..., ge=-1.0, le=1.0, description="Mean of the qualifying cosines.")
    cosines_considered: int = Field(..., ge=0, description="Version-by-version cosines computed.")
    n_qualifying: int = Field(..., ge=0, description="Cosines at or above the original cosine.")
    original_cosine: float = Field(..., description="Cosine between the two original pairs.")

    model_config = {
        "frozen": True,
        "json_schema_extra": {
            "examples": [{"value": 0.677258, "cosines_considered": 16, "n_qualifying": 9, "original_cosine": 0.52}]
        },
    }


class Comparison(BaseModel):
    """One line of `lra sim` output."""

    pair1: str
    pair2: str
    similarity: float
    original_cosine: float
    n_qualifying: int
