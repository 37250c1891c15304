"""
Exception hierarchy for depsent.

Everything raised on bad data derives from DepsentError so the CLI can map
it to a single exit code.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Sequence


class DepsentError(Exception):
    """Root of all data/validation errors raised by depsent."""


class ConllFormatError(DepsentError, ValueError):
    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class TreeValidationError(DepsentError, ValueError):
    def __init__(self, sentence_id: str, violations: Sequence[Any]):
        self.sentence_id = sentence_id
        self.violations: List[Any] = list(violations)
        details = "; ".join(str(v) for v in self.violations)
        super().__init__(f"sentence {sentence_id}: invalid tree ({details})")


class AlignmentError(DepsentError, ValueError):
    def __init__(self, message: str, sentence_index: Optional[int] = None, sentence_id: Optional[str] = None):
        self.sentence_index = sentence_index
        self.sentence_id = sentence_id
        if sentence_id is not None:
            message = f"sentence {sentence_id}: {message}"
        super().__init__(message)


class LexiconError(DepsentError, ValueError):
    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"lexicon line {line_number}: {message}"
        super().__init__(message)


class ConfigError(DepsentError, ValueError):
    pass


class DegenerateTableError(DepsentError, ValueError):
    def __init__(self, message: str, contingency: Optional[Dict[str, Any]] = None):
        self.contingency = contingency
        super().__init__(message)


class CorpusError(DepsentError, ValueError):
    def __init__(self, message: str, missing: Sequence[str] = ()):
        self.missing = list(missing)
        if self.missing:
            message = f"{message}: {', '.join(self.missing)}"
        super().__init__(message)


class EmptyDocumentError(DepsentError, ValueError):
    pass
