"""Shared exception types."""


class IncompatibleFieldError(ValueError):
    """The coefficient characteristic p divides the poset parameter q."""


class ResourceLimitError(RuntimeError):
    """An enumeration or closure exceeded its configured cap."""


class InternalConsistencyError(RuntimeError):
    """A structural guarantee failed; indicates a bug or bad data, not a user error."""


class DataError(ValueError):
    """Malformed or inconsistent input data (group files, character tables)."""
