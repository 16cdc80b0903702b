"""Errors for model backends and model-output parsing."""

from __future__ import annotations


class BackendError(Exception):
    """Base class for model-access failures."""


class ReplayExhausted(BackendError):
    """The scripted backend has no response left for this role."""


class TransportError(BackendError):
    """The HTTP backend could not reach the server (after retries)."""


class NonOkStatus(BackendError):
    """The HTTP backend got a non-success status code."""

    def __init__(self, status: int, body: str):
        super().__init__(f"backend returned status {status}: {body[:200]}")
        self.status = status


class MissingField(ValueError):
    """A prompt template was rendered without a required context field."""


class OutputParseError(ValueError):
    """Base class for unusable model output."""


class NoActionFound(OutputParseError):
    """Policy output contains no action expression."""


class UnknownActionName(OutputParseError):
    """Policy output calls a name that is neither a primitive nor a skill."""


class ArgumentParseError(OutputParseError):
    """An action expression has non-literal or malformed arguments."""


class UnparseableVerdict(OutputParseError):
    """Judge output has no Status line."""
