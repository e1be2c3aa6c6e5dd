"""Exception types shared across the package."""


class ConicLabError(Exception):
    """Base class for all errors raised by conic_lab."""


class InputError(ConicLabError, ValueError):
    """Malformed or inconsistent input (bad file, bad parameter, failed precondition)."""


class ParseError(InputError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
            if text is not None:
                message += f"\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class ResourceCapExceeded(ConicLabError):
    """A configurable computation budget was exhausted; no partial answer is returned."""

    def __init__(self, cap, limit, detail=""):
        self.cap = cap
        self.limit = limit
        msg = f"resource cap {cap!r} exceeded (limit {limit})"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class NotZeroDimensional(ConicLabError):
    """A quotient that was expected to be finite-dimensional is not."""


class UnsupportedSingularity(ConicLabError):
    """The arrangement has a singularity outside the requested mode."""


class GenericityFailure(ConicLabError):
    """Random projections kept disagreeing within the retry budget."""
