"""
Exception hierarchy for survey-fs
"""

from pathlib import Path
from typing import Optional, Union


class SurveyFSError(Exception):
    """Base error for every failure raised by the toolkit."""


class DataFormatError(SurveyFSError):
    """Malformed input file (header, ragged rows, label collisions)."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SchemaError(SurveyFSError):
    """Invalid schema, index or parameter set."""


class ScoringError(SurveyFSError):
    """A scorer precondition does not hold."""


class EvaluationError(SurveyFSError):
    """Cross-validation or metric computation cannot proceed."""


class ReportError(SurveyFSError):
    """Writing an output artifact failed."""

    def __init__(self, path: Union[str, Path], reason: str):
        self.path = Path(path)
        super().__init__(f"{self.path}: {reason}")
