from __future__ import annotations

from datetime import datetime, timezone
from typing import Dict, List

from pydantic import BaseModel, Field

from models.config import LraConfig


class StageTiming(BaseModel):
    stage: str = Field(..., json_schema_extra={"example": "svd"})
    seconds: float = Field(..., ge=0.0)


class MatrixStats(BaseModel):
    input_pairs: int = Field(0, ge=0)
    pair_versions: int = Field(0, ge=0, description="Distinct originals and alternates.")
    rows: int = Field(0, ge=0)
    columns: int = Field(0, ge=0)
    nonzeros: int = Field(0, ge=0)
    density: float = Field(0.0, ge=0.0, le=1.0)
    dropped_pairs: int = Field(0, ge=0, description="Pair versions with all-zero rows.")
    patterns: int = Field(0, ge=0)
    k_requested: int = Field(0, ge=0)
    k_effective: int = Field(0, ge=0)


class RunManifest(BaseModel):
    """What went into a pipeline run and what came out."""

    config: LraConfig
    corpus_digest: str = Field(..., description="SHA-256 of the serialized corpus index.")
    thesaurus_digest: str = Field(..., description="SHA-256 of the canonical thesaurus entries.")
    pairs_digest: str = Field(..., description="SHA-256 of the ordered input pairs.")
    run_digest: str = Field(..., description="SHA-256 over the three digests and the configuration.")
    artifacts: Dict[str, str] = Field(default_factory=dict, description="Artifact name -> path.")
    timings: List[StageTiming] = Field(default_factory=list)
    stats: MatrixStats = Field(default_factory=MatrixStats)
    created_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))

    model_config = {
        "json_schema_extra": {
            "examples": [
                {
                    "config": {"num_sim": 10, "max_phrase": 5, "num_filter": 3, "min_inter": 1, "max_inter": 3,
                               "num_patterns": 4000, "k": 300},
                    "corpus_digest": "9f2c...",
                    "thesaurus_digest": "41ab...",
                    "pairs_digest": "07de...",
                    "run_digest": "c3d1...",
                    "artifacts": {"space": "runs/c3d1/space.lraprj"},
                    "timings": [{"stage": "find_alternates", "seconds": 0.02}],
                    "created_at": "2025-10-18T12:00:00Z",
                }
            ]
        }
    }
