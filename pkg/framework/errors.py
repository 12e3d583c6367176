from __future__ import annotations

from typing import Optional


class LraError(Exception):
    """Base error; `detail` is what the CLI prints, `exit_code` what it exits with."""

    exit_code: int = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ConfigError(LraError):
    exit_code = 2


class InputError(LraError):
    """A required input is missing or unreadable."""

    exit_code = 2


class ContractViolation(LraError, ValueError):
    """A caller broke an operation's precondition."""


class CorpusBuildError(LraError):
    pass


class IndexFormatError(LraError):
    pass


class ThesaurusFormatError(LraError):
    def __init__(self, detail: str, line_number: Optional[int] = None):
        if line_number is not None:
            detail = f"line {line_number}: {detail}"
        super().__init__(detail)
        self.line_number = line_number


class DatasetFormatError(LraError):
    def __init__(self, detail: str, line_number: Optional[int] = None):
        if line_number is not None:
            detail = f"line {line_number}: {detail}"
        super().__init__(detail)
        self.line_number = line_number


class PairNotInRunError(LraError):
    def __init__(self, pair: str):
        super().__init__(f"pair not in pipeline run: {pair}")
        self.pair = pair


class ConvergenceError(LraError):
    def __init__(self, detail: str, achieved_tolerance: Optional[float] = None):
        if achieved_tolerance is not None:
            detail = f"{detail} (achieved tolerance {achieved_tolerance:.3e})"
        super().__init__(detail)
        self.achieved_tolerance = achieved_tolerance


class PipelineStageError(LraError):
    def __init__(self, stage: str, cause: BaseException):
        reason = cause.detail if isinstance(cause, LraError) else str(cause) or type(cause).__name__
        super().__init__(f"stage '{stage}' failed: {reason}")
        self.stage = stage
        self.cause = cause
        if isinstance(cause, LraError):
            self.exit_code = cause.exit_code
