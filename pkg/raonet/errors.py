"""Exception hierarchy for raonet.

The CLI maps ``UsageError`` to exit code 1 and ``DataError`` to exit code 2.
"""

from typing import Optional


class RaonetError(Exception):
    """Base class for all raonet errors."""

    exit_code = 2


class UsageError(RaonetError):
    """Bad command-line usage or configuration."""

    exit_code = 1

    def __init__(self, message: str, usage: Optional[str] = None):
        self.usage = usage
        super().__init__(message)


class ConfigError(UsageError):
    """Pipeline configuration does not match its schema."""


class DataError(RaonetError):
    """Input data is malformed or inconsistent."""


class NetFormatError(DataError):
    """A Pajek file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.message = message
        self.line = line
        if line is not None:
            message = f"{message}, line {line}"
        super().__init__(message)


class PartitionError(DataError):
    """A partition does not fit the network it is applied to."""


class RestrictError(DataError):
    """A node subset is empty or unknown."""


class LengthMappingError(DataError):
    """An arc weight maps to a non-positive or non-finite length."""


class DirectionMismatchError(DataError):
    """A probability vector and a distance provider disagree on direction."""


class StatsError(DataError):
    """Statistical routine called with unusable input."""
