"""Errors raised by the skill language parser, validator, and interpreter."""

from __future__ import annotations


class DslError(Exception):
    """Base class for all skill-language errors."""


class SkillSyntaxError(DslError):
    """Malformed source text, with location information."""

    def __init__(self, message: str, line: int = 0, column: int = 0, definition: str | None = None):
        loc = f"line {line}, col {column}" if line else "unknown location"
        prefix = f"in definition '{definition}' " if definition else ""
        super().__init__(f"{prefix}({loc}): {message}")
        self.line = line
        self.column = column
        self.definition = definition


class UnsupportedConstruct(SkillSyntaxError):
    """Source uses a construct outside the restricted grammar.

    ``construct`` names the rejected feature (e.g. ``while-loop``,
    ``try-except``, ``arithmetic``).
    """

    def __init__(self, construct: str, message: str, line: int = 0, column: int = 0,
                 definition: str | None = None):
        super().__init__(f"{construct}: {message}", line, column, definition)
        self.construct = construct


class ArityMismatch(DslError):
    """A call supplies the wrong number of arguments."""


class DepthExceeded(DslError):
    """Nested skill expansion went past the depth limit."""


class UnboundIdentifier(DslError):
    """An identifier did not resolve to a parameter or loop variable."""


class EvaluationError(DslError):
    """A body expression failed to evaluate (e.g. index out of range)."""
