from __future__ import annotations

from pydantic import BaseModel, Field, model_validator


class LraConfig(BaseModel):
    """Every pipeline parameter. Defaults are the published settings."""

    num_sim: int = Field(10, ge=1, description="Thesaurus neighbours taken per pair member.")
    max_phrase: int = Field(5, ge=3, description="Longest phrase, endpoints included, counted when filtering alternates.")
    num_filter: int = Field(3, ge=1, description="Alternates kept per original pair.")
    min_inter: int = Field(1, ge=1, description="Fewest intervening words in a harvested phrase.")
    max_inter: int = Field(3, ge=1, description="Most intervening words in a harvested phrase.")
    num_patterns: int = Field(4000, ge=1, description="Patterns kept after mining.")
    k: int = Field(300, ge=1, description="Rank retained by the truncated SVD.")

    svd_tol: float = Field(1e-10, gt=0, description="Relative tolerance for singular-value residuals and rank.")
    dense_limit: int = Field(
        4_000_000, ge=1, description="Matrices with rows*cols up to this size are decomposed densely."
    )
    use_alternates: bool = Field(True, description="Look up alternate pairs; when false each pair is its only version.")
    use_svd: bool = Field(True, description="Decompose the weighted matrix; when false cosines use its rows directly.")
    seed: int = Field(0, description="Reserved. The pipeline is deterministic and never reads it.")

    model_config = {
        "frozen": True,
        "extra": "forbid",
        "json_schema_extra": {
            "examples": [
                {
                    "num_sim": 10,
                    "max_phrase": 5,
                    "num_filter": 3,
                    "min_inter": 1,
                    "max_inter": 3,
                    "num_patterns": 4000,
                    "k": 300,
                }
            ]
        },
    }

    @model_validator(mode="after")
    def _check_phrase_bounds(self) -> "LraConfig":
        if self.min_inter > self.max_inter:
            raise ValueError(f"min_inter ({self.min_inter}) exceeds max_inter ({self.max_inter})")
        if self.max_inter != self.max_phrase - 2:
            raise ValueError(
                f"max_inter must equal max_phrase - 2 (max_phrase={self.max_phrase}, max_inter={self.max_inter})"
            )
        return self
