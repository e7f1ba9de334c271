"""Exception types shared across the toolkit."""
from __future__ import annotations


class AsymfitError(Exception):
    """Base class for all data and domain errors raised by this package."""


class DomainError(AsymfitError):
    """An argument lies outside the mathematical domain of the operation."""


class SingularMatrix(AsymfitError):
    """Elimination hit a zero (exact) or below-threshold (real) pivot."""


class ParseError(AsymfitError):
    """A series or alpha file is malformed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SignViolation(AsymfitError):
    """A coefficient contradicts the declared sign convention."""

    def __init__(self, index: int, value=None):
        self.index = index
        self.value = value
        detail = f" (value {value})" if value is not None else ""
        super().__init__(f"sign convention violated at n={index}{detail}")


class MissingIndex(AsymfitError):
    """A required series index is not covered by the table."""

    def __init__(self, index: int, message: str = ""):
        self.index = index
        suffix = f": {message}" if message else ""
        super().__init__(f"series does not cover index n={index}{suffix}")


class MissingAlpha(AsymfitError):
    """An alpha coefficient required by the index window is absent."""

    def __init__(self, n: int, i: int):
        self.n = n
        self.i = i
        super().__init__(f"alpha table lacks entry (n={n}, i={i}) inside the window")


class ZeroCoefficient(AsymfitError):
    """A coefficient that must be divided by (or into) is zero."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"coefficient at n={index} is zero")


class LengthError(AsymfitError):
    """A coefficient vector is too short for the requested transform."""
