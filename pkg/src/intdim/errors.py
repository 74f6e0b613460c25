"""Exception hierarchy shared across the toolkit.

Each error class carries the process exit code used by the command-line
front end (0 = success, 2 = configuration, 3 = data validation,
4 = degenerate data).
"""


class IntdimError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class ConfigurationError(IntdimError):
    """Invalid parameters, flags, or spec combinations."""

    exit_code = 2


class DataValidationError(IntdimError):
    """Malformed or non-finite input data."""

    exit_code = 3


class DegenerateDataError(IntdimError):
    """Data that is structurally unusable for estimation (too few points,
    zero distances, constant columns, all-equal ratios)."""

    exit_code = 4


class DuplicatePointError(DegenerateDataError):
    """Zero first-neighbor distance; caller should dedupe first."""


class InsufficientDataError(DegenerateDataError):
    """Fewer usable points than an operation requires."""
