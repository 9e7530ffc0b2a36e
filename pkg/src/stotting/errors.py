"""Exception types shared across the package."""

from __future__ import annotations


class InputError(ValueError):
    """Malformed or out-of-range user input (files, vertices, flags)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContractViolation(RuntimeError):
    """An operation was called outside its precondition (illegal move, terminal state, ...)."""


class StrategyFault(RuntimeError):
    """A strategy oracle returned an illegal move.

    ``transcript`` is the history the oracle was queried on.
    """

    def __init__(self, message: str, transcript=()):
        self.transcript = tuple(transcript)
        super().__init__(message)


class MatroidAxiomError(RuntimeError):
    """Raised when a supposed matroid violates the basis exchange axiom."""
