"""Exception types shared across the library."""

from __future__ import annotations


class ResourceLimitError(RuntimeError):
    """A computation exceeded its explicit budget and was aborted.

    Raised instead of returning a possibly wrong answer; the message names
    the budget that was exhausted.
    """


class InternalConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagreed.

    Signals a broken invariant inside the library, never bad user input.
    """


class ConstructionError(RuntimeError):
    """A code with the requested parameters could not be constructed.

    Existence of the target parameters is not established; callers may
    truncate a family scan at this point.
    """


class ParseError(ValueError):
    """A text input failed to parse.

    ``line`` holds the 1-based line number of the offending line; the
    message includes it already.
    """

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
