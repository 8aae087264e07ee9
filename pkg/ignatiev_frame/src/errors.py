"""Exception hierarchy shared by every module of the package."""

from typing import Dict, Optional


class IgnatievError(ValueError):
    """Base class for all domain errors. The CLI maps it to exit code 2."""


class ParseError(IgnatievError):
    """Syntax error in one of the text formats."""

    kind = "input"

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(f"{self.kind} syntax error at position {position}: {message}")


class OrdinalSyntaxError(ParseError):
    kind = "ordinal"


class PointSyntaxError(ParseError):
    kind = "point"


class SequenceSyntaxError(ParseError):
    kind = "sequence"


class FormulaSyntaxError(ParseError):
    kind = "formula"


class InvalidCaseError(IgnatievError, ArithmeticError):
    """An operation was applied outside its case, e.g. the predecessor of a limit."""


class ChainViolation(IgnatievError):
    """A point breaks the chain condition at ``index``: coordinate index+1 exceeds l(coordinate index)."""

    def __init__(self, index: int, message: Optional[str] = None):
        self.index = index
        super().__init__(message or f"chain violation at index {index}")


class NotSuitableError(IgnatievError):
    """A sequence is not suitable; ``index`` is the first violating coordinate."""

    def __init__(self, index: int, message: Optional[str] = None):
        self.index = index
        super().__init__(message or f"sequence is not suitable at index {index}")


class NoMaximumError(IgnatievError):
    """The common lower bounds found inside an enumeration bound have no greatest element."""


class SupNotAttained(IgnatievError):
    """A supremum is not attained inside the enumeration bound.

    ``partial`` holds the coordinates computed (from the top index downwards)
    before the oracle had to stop.
    """

    def __init__(self, index: int, partial: Optional[Dict[int, object]] = None):
        self.index = index
        self.partial = dict(partial or {})
        super().__init__(f"supremum not attained within bound at index {index}")
