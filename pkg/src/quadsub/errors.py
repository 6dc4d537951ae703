"""Exception types shared across the package."""


class QuadsubError(Exception):
    """Base class for all package-specific errors."""


class DomainError(QuadsubError, ValueError):
    """A mathematical argument lies outside its permitted domain."""


class UsageError(QuadsubError, ValueError):
    """An operation was invoked with inconsistent or unsupported arguments."""


class CapacityError(QuadsubError, OverflowError):
    """A requested object would exceed addressable size."""


class NumericalError(QuadsubError, RuntimeError):
    """An iterative numerical procedure failed to converge."""
