#!/usr/bin/env python3

"""
Custom exceptions for the EOFP toolkit

Every exception carries the process exit code the CLI reports for it,
so each failure path maps to exactly one documented code.
"""


class EofpError(Exception):
    """Base exception for all EOFP errors."""

    exit_code: int = 2


class UsageError(EofpError):
    """Command-line usage was invalid."""

    exit_code = 1


class ValidationError(EofpError):
    """Data validation failed."""

    pass


class ConfigurationError(EofpError):
    """Run configuration could not be read or parsed."""

    pass


class FileOperationError(EofpError):
    """File operations failed."""

    pass


class ModelFormatError(EofpError):
    """A model file is malformed."""

    pass


class BadMagicError(ModelFormatError):
    """The stream does not start with the EOFP magic."""

    pass


class VersionMismatchError(ModelFormatError):
    """The container version is not supported."""

    pass


class TruncatedPayloadError(ModelFormatError):
    """The stream ended before the header or payload was complete."""

    pass


class InvalidHeaderError(ModelFormatError):
    """A header field holds a value outside its documented range."""

    pass


class LengthMismatchError(ModelFormatError):
    """Header fields and payload length disagree."""

    pass


class NumericError(EofpError):
    """A value cannot be represented or processed numerically."""

    exit_code = 3

    def __init__(self, message: str, index: int | None = None, tensor: int | None = None):
        super().__init__(message)
        self.index = index
        self.tensor = tensor


class NonFiniteValueError(NumericError):
    """NaN or infinity where a finite value is required."""

    pass


class DenormalValueError(NumericError):
    """A denormal value reached the exponent stage."""

    pass


class ExponentOverflowError(NumericError):
    """Conditional rounding would carry the exponent into the special range."""

    pass


class DivergenceError(NumericError):
    """Training produced a non-finite loss."""

    def __init__(self, message: str, epoch: int):
        super().__init__(message)
        self.epoch = epoch
