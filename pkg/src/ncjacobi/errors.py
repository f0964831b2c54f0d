"""Exception hierarchy.

Everything raised on purpose by the library derives from :class:`NCJacobiError`.
:class:`DomainError` marks mathematically invalid requests (the CLI maps these
to exit code 3); :class:`SchemaError` marks malformed input data (exit code 2).
"""


class NCJacobiError(Exception):
    pass


class SchemaError(NCJacobiError, ValueError):
    """Input data does not follow the JSON measure schema."""

    def __init__(self, message, field=None):
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)


class ArityError(SchemaError):
    """A single measure was given where a pair is required, or the reverse."""


class DomainError(NCJacobiError, ValueError):
    pass


class NonInvertibleSeriesError(DomainError):
    pass


class CompositionError(DomainError):
    pass


class BudgetExceededError(DomainError):
    pass


class CrossingPartitionError(DomainError):
    pass


class InsufficientDepthError(DomainError):
    pass


class AdmissibilityError(DomainError):
    pass


class OrderMismatchError(DomainError):
    pass


class PositivityWarning(UserWarning):
    """A constructed moment sequence failed the Hankel positivity probe."""
