"""Exceptions shared across the package."""


class ValidationError(ValueError):
    """An object or argument violates a documented contract."""


class ResourceLimitError(RuntimeError):
    """A requested construction exceeds the configured size limit."""
