"""Shared exception types."""


class SizeError(ValueError):
    """An index or ground-set size is outside the supported range."""


class StructureError(ValueError):
    """Input data does not have the required combinatorial structure."""


class InsufficientDataError(LookupError):
    """A cumulant of higher order than the supplied data was requested."""
