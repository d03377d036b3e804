"""Exception types shared across the package."""

from __future__ import annotations

__all__ = ["WeierError", "DomainError", "PoleError", "PrecisionError"]


class WeierError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(WeierError, ValueError):
    """Input is outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """Evaluation point lies on (or numerically indistinguishable from) the lattice.

    ``nearest`` carries the offending lattice point.
    """

    def __init__(self, message: str, nearest: complex | None = None):
        super().__init__(message)
        self.nearest = nearest


class PrecisionError(WeierError, ArithmeticError):
    """The requested tolerance is unreachable under the configured caps."""
