from __future__ import annotations

from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from models.pair import WordPair

Group = Literal["causal", "temporal", "spatial", "participatory", "qualitative"]


class AnalogyQuestion(BaseModel):
    stem: WordPair
    choices: List[WordPair] = Field(..., min_length=5, max_length=5)
    answer_index: int = Field(..., ge=0, le=4)

    model_config = {
        "frozen": True,
        "json_schema_extra": {
            "examples": [
                {
                    "stem": {"a": "quart", "b": "volume"},
                    "choices": [
                        {"a": "day", "b": "night"},
                        {"a": "mile", "b": "distance"},
                        {"a": "decade", "b": "century"},
                        {"a": "friction", "b": "heat"},
                        {"a": "part", "b": "whole"},
                    ],
                    "answer_index": 1,
                }
            ]
        },
    }


class Answer(BaseModel):
    """A guess for one question; `choice` is None when the question was skipped."""

    choice: Optional[int] = Field(None, ge=0, le=4)
    answer_index: int = Field(..., ge=0, le=4)
    similarities: List[float] = Field(default_factory=list)

    @property
    def skipped(self) -> bool:
        return self.choice is None

    @property
    def correct(self) -> bool:
        return self.choice == self.answer_index


class NounModifierInstance(BaseModel):
    modifier: str = Field(..., min_length=1, json_schema_extra={"example": "laser"})
    head: str = Field(..., min_length=1, json_schema_extra={"example": "printer"})
    class30: str = Field(..., min_length=1, json_schema_extra={"example": "instrument"})
    class5: Group = Field(..., json_schema_extra={"example": "participatory"})

    model_config = {"frozen": True}

    @property
    def pair(self) -> WordPair:
        return WordPair(a=self.modifier, b=self.head)


class ClassConfusion(BaseModel):
    true_positives: int = Field(0, ge=0)
    false_positives: int = Field(0, ge=0)
    false_negatives: int = Field(0, ge=0)


class ClassMetrics(BaseModel):
    label: str
    precision: float
    recall: float
    f: float


class EvalReport(BaseModel):
    """Counts plus the score (analogies) or accuracy and macro P/R/F (classification)."""

    task: str = Field(..., json_schema_extra={"example": "sat"})
    measure: str = Field(..., json_schema_extra={"example": "lra"})
    correct: int = Field(..., ge=0)
    incorrect: int = Field(..., ge=0)
    skipped: int = Field(0, ge=0)
    total: int = Field(..., ge=0)
    score: Optional[float] = None
    accuracy: Optional[float] = None
    precision: Optional[float] = None
    recall: Optional[float] = None
    f: Optional[float] = None
    per_class: List[ClassMetrics] = Field(default_factory=list)

    model_config = {
        "json_schema_extra": {
            "examples": [
                {"task": "sat", "measure": "lra", "correct": 210, "incorrect": 160, "skipped": 4, "total": 374,
                 "score": 0.5636363636363636}
            ]
        }
    }

    @model_validator(mode="after")
    def _counts_add_up(self) -> "EvalReport":
        if self.correct + self.incorrect + self.skipped != self.total:
            raise ValueError("correct + incorrect + skipped must equal total")
        return self


class LoocvReport(BaseModel):
    measure: str
    class30: EvalReport
    class5: EvalReport
    neighbors: List[int] = Field(default_factory=list, description="Index of each instance's nearest neighbour.")
