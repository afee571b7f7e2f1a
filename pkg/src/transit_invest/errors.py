"""Exception types shared across the package."""


class TransitError(Exception):
    """Base class for all package errors."""


class InstanceError(TransitError, ValueError):
    """An instance violates one of its structural invariants.

    ``field`` names the offending field (a dotted path when parsing files).
    """

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class InvalidAgentError(TransitError, ValueError):
    pass


class InvalidVertexError(TransitError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "invalid vertex"


class NoPathError(TransitError):
    pass


class InapplicableError(TransitError, ValueError):
    """An operation's precondition on the instance does not hold."""


class TooLargeError(TransitError):
    """An exhaustive enumeration would exceed the configured subset cap."""

    def __init__(self, count, cap):
        super().__init__(f"enumeration needs {count} subsets, cap is {cap}")
        self.count = count
        self.cap = cap
