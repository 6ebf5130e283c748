"""Exception types raised across the package."""

from __future__ import annotations


class ConfspaceError(Exception):
    """Base class for all errors raised by confspace."""


class SpaceMismatch(ConfspaceError):
    pass


class AlphabetMismatch(ConfspaceError):
    pass


class TruncationOverflow(ConfspaceError):
    """A decoration left the working window of a truncated chart."""


class UnsupportedProduct(ConfspaceError):
    """No canonical-basis expansion is known for this Whitehead product."""


class LevelMismatch(ConfspaceError):
    pass


class IllegalIndex(ConfspaceError):
    pass


class ConfigError(ConfspaceError):
    pass


class ParseError(ConfspaceError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
