"""Exceptions shared across the package."""

from __future__ import annotations


class ParseError(ValueError):
    """Malformed textual input (polynomial, tangle expression, or PD code).

    `position` is a 0-based offset into the input when known, else None.
    """

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class ResourceLimitError(RuntimeError):
    """A computation was refused because it exceeds a configured budget."""


class OrientationError(ValueError):
    """The requested orientation convention does not apply to the diagram."""
