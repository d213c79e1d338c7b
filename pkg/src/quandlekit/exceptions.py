"""Exception types raised across the package."""


class QuandleKitError(Exception):
    """Base class for all errors raised by quandlekit."""


class AlphabetMismatchError(QuandleKitError, ValueError):
    pass


class MalformedTableError(QuandleKitError, ValueError):
    pass


class NotAQuandleError(QuandleKitError, ValueError):
    pass


class PreconditionError(QuandleKitError, ValueError):
    """An input violates the precondition of an operation.

    The message names the predicate that failed.
    """


class DiagramError(QuandleKitError, ValueError):
    pass


class ParseError(QuandleKitError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class CapacityError(QuandleKitError):
    """A computation would exceed the configured size limits."""
