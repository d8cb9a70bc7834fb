"""Exception types shared by every module."""


class OrliczLabError(Exception):
    """Base class for all package errors."""


class DomainError(OrliczLabError, ValueError):
    """An argument lies outside the domain of the operation."""


class NonConvergenceError(OrliczLabError, RuntimeError):
    """An iterative method stopped before meeting its tolerance.

    ``bracket`` carries the last bracket (or best iterate) for diagnostics.
    """

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class HypothesisError(OrliczLabError, ValueError):
    """A structural hypothesis needed by a construction is not satisfied."""

    def __init__(self, message, hypothesis=None, detail=None):
        super().__init__(message)
        self.hypothesis = hypothesis
        self.detail = detail


class DegenerateInputError(OrliczLabError, ValueError):
    """Input is trivial in a way that makes the operation undefined."""


class SpecError(OrliczLabError, ValueError):
    """Malformed spec string; ``pos`` is the 0-based column of the problem."""

    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        pointer = f"\n  {text}\n  {' ' * pos}^" if text else ""
        super().__init__(f"column {pos + 1}: {message}{pointer}")
