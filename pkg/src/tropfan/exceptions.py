"""Custom exceptions for tropfan."""

from typing import Optional


class TropFanError(Exception):
    """Base exception for all tropfan errors."""


class ConfigError(TropFanError):
    """Raised when there's an issue with configuration."""


class FanFileError(TropFanError):
    """Raised when a fan file cannot be parsed."""

    def __init__(
        self, message: str, line: Optional[int] = None, column: Optional[int] = None
    ):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class FanValidationError(TropFanError):
    """Raised when a fan description violates the fan axioms."""


class UnsupportedStarError(TropFanError):
    """Raised when a star fan cannot be computed combinatorially."""


class FunctionError(TropFanError):
    """Raised for incompatible or non-integral conewise linear functions."""


class SubfanError(TropFanError):
    """Raised when a cone set is not a subfan of the given fan."""


class ComplexError(TropFanError):
    """Raised for invalid chain complex requests."""


class NonSimplicialError(TropFanError):
    """Raised when an operation requires a simplicial fan."""


class ExampleNotFoundError(TropFanError):
    """Raised when an unknown example name is requested."""


class GuardrailError(TropFanError):
    """Raised when an input exceeds the configured computation limits."""
