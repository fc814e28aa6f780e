"""Exception types shared across the package."""

from __future__ import annotations


class TopogradError(Exception):
    """Base class for all errors raised by topograd."""

    code = "error"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class InvalidInput(TopogradError, ValueError):
    code = "invalid_input"


class DegenerateInput(InvalidInput):
    code = "degenerate_input"


class InvalidSpec(InvalidInput):
    code = "invalid_spec"


class ParseError(InvalidInput):
    code = "parse_error"

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason

    def to_dict(self) -> dict:
        return {"error": self.code, "line": self.line, "reason": self.reason}


class BudgetExceeded(TopogradError):
    """The search ran out of budget before it could decide the question.

    ``best`` carries whatever partial answer was available (a lower bound or
    a witness), so callers can still report something.
    """

    code = "budget_exceeded"

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class PreconditionFailed(TopogradError):
    code = "precondition_failed"

    def __init__(self, message: str, stage: str | None = None):
        super().__init__(message)
        self.stage = stage

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self), "stage": self.stage}


class SearchExhausted(TopogradError):
    """A complete search found nothing meeting the requested threshold."""

    code = "search_exhausted"

    def __init__(self, message: str, stage: str | None = None, instance=None):
        super().__init__(message)
        self.stage = stage
        self.instance = instance

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self), "stage": self.stage}
