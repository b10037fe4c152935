"""Exception hierarchy shared by every layer of the toolkit."""

from __future__ import annotations

from typing import Optional, Tuple


class CbvtcError(Exception):
    """Base class.  ``pos`` is an optional ``(line, column)`` pair, 1-based."""

    def __init__(self, message: str, pos: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.message = message
        self.pos = pos

    def at(self, pos):
        """Attach a position unless one is already known; returns self."""
        if self.pos is None and pos is not None:
            self.pos = pos
        return self

    def __str__(self):
        if self.pos is None:
            return self.message
        return f"{self.pos[0]}:{self.pos[1]}: {self.message}"


# term layer
class UnknownSymbol(CbvtcError):
    pass


class UnknownType(CbvtcError):
    pass


class TypeMismatch(CbvtcError):
    pass


class UnboundVariable(CbvtcError):
    pass


class PatternError(CbvtcError):
    pass


class DuplicateSymbol(CbvtcError):
    pass


# parsing
class ParseError(CbvtcError):
    """Malformed input text (lexical or grammatical)."""


# semantics
class MissingKey(CbvtcError):
    pass


class MissingSymbol(CbvtcError):
    pass


class ShapeError(CbvtcError):
    pass


class GridTooLarge(CbvtcError):
    pass


# engine
class FuelExhausted(CbvtcError):
    def __init__(self, message, term=None, steps=0):
        super().__init__(message)
        self.term = term
        self.steps = steps


class NonTerminating(FuelExhausted):
    """A reduction cycle was found, so no finite derivation height exists."""
