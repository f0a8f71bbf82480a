"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all toolkit-specific errors."""


class ValidationError(ToolkitError, ValueError):
    """Input data fails a structural or numerical validity check."""


class UsageError(ToolkitError, ValueError):
    """An operation was called with arguments outside its contract."""


class DomainError(ToolkitError, ValueError):
    """A parameter lies outside the mathematical domain of a formula."""


class CapacityError(ToolkitError):
    """A requested enumeration exceeds the configured support guard."""


class InternalConsistencyError(ToolkitError, RuntimeError):
    """A computed quantity violated an exact identity beyond tolerance."""
