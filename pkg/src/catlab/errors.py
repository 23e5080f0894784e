"""Exception types shared across the package."""


class CatlabError(Exception):
    """Base class for all package-specific errors."""


class DomainError(CatlabError, ValueError):
    """An argument is outside the domain of the operation."""


class ValidityError(CatlabError, ValueError):
    """A closed-form formula was requested outside its validity domain."""


class ResourceLimitError(CatlabError, RuntimeError):
    """An exact computation would exceed its configured resource guard."""
