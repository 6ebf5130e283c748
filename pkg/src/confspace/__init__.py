"""Symbolic rational homotopy of compactified configuration spaces of 4-manifolds."""

from .errors import (
    AlphabetMismatch,
    ConfigError,
    ConfspaceError,
    IllegalIndex,
    LevelMismatch,
    ParseError,
    SpaceMismatch,
    TruncationOverflow,
    UnsupportedProduct,
)
from .fpgroup import GroupSpec, Word, parse_word

__version__ = "0.1.0"

__all__ = [
    "AlphabetMismatch",
    "ConfigError",
    "ConfspaceError",
    "GroupSpec",
    "IllegalIndex",
    "LevelMismatch",
    "ParseError",
    "SpaceMismatch",
    "TruncationOverflow",
    "UnsupportedProduct",
    "Word",
    "parse_word",
]
