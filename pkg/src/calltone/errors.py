"""Exception hierarchy shared across the package.

Every deliberate failure maps to a process exit code so the command-line
driver can translate exceptions without inspecting messages:

    2  configuration problems
    3  unreadable or malformed input data
    4  statistical degeneracy (no estimate is possible)
    5  temporal-leak violations of the train/test split
"""

from __future__ import annotations

__all__ = [
    "CalltoneError",
    "ConfigError",
    "ParseError",
    "EmptyTranscriptError",
    "DataError",
    "AlignmentError",
    "DegenerateError",
    "FitError",
    "SingularityError",
    "TemporalLeakError",
]


class CalltoneError(Exception):
    """Base class for every error this package raises on purpose.

    Carries an optional file path and line number; when present they are
    prefixed to the message so tracebacks and CLI output point at the
    offending record.
    """

    exit_code = 1

    def __init__(self, message: str, *, path: str | None = None,
                 line: int | None = None) -> None:
        loc = ""
        if path is not None:
            loc = f"{path}:{line}: " if line is not None else f"{path}: "
        elif line is not None:
            loc = f"line {line}: "
        super().__init__(loc + message)
        self.path = path
        self.line = line


class ConfigError(CalltoneError):
    """Invalid, inconsistent, or unachievable run configuration."""

    exit_code = 2


class ParseError(CalltoneError):
    """Malformed input record that could not be decoded at all."""

    exit_code = 3


class EmptyTranscriptError(ParseError):
    """Transcript record with zero speaker turns."""


class DataError(CalltoneError):
    """Well-formed file carrying impossible values (non-positive close,
    duplicate dates, duplicate panel keys)."""

    exit_code = 3


class AlignmentError(DataError):
    """Series that must share a time index do not; message lists the gaps."""


class DegenerateError(CalltoneError):
    """A statistical procedure has no meaningful estimate on this input."""

    exit_code = 4


class FitError(DegenerateError):
    """Weight estimation found no admissible solution."""


class SingularityError(DegenerateError):
    """Rank-deficient regression design; names the offending column."""


class TemporalLeakError(CalltoneError):
    """A training-period computation touched data at or after the cutoff."""

    exit_code = 5
