"""Exception types shared across the package."""

from __future__ import annotations


class EmbedkitError(Exception):
    """Base class for all library errors."""


class ValidationError(EmbedkitError, ValueError):
    """Input violates a documented precondition.

    ``vertex`` is set when the problem can be pinned to one vertex.
    """

    def __init__(self, message: str, vertex: int | None = None):
        super().__init__(message)
        self.vertex = vertex


class InconsistencyError(EmbedkitError, RuntimeError):
    """An internal cross-check failed (odd Euler characteristic, k != 2g, ...)."""


class OrthogonalityError(InconsistencyError):
    """H_X H_Z^T is nonzero; ``pair`` is the first offending (vertex, face)."""

    def __init__(self, message: str, pair: tuple[int, int]):
        super().__init__(message)
        self.pair = pair


class NonexistenceError(EmbedkitError, ValueError):
    """The requested embedding is known not to exist."""


class FormatError(EmbedkitError, ValueError):
    """Malformed text input; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BudgetExhausted(EmbedkitError):
    """A bounded search stopped before finding an answer; not a proof of absence."""
