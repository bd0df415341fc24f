"""Exception hierarchy shared by all modules."""


class YospError(Exception):
    """Base class for library errors."""


class InvalidInput(YospError, ValueError):
    pass


class UnsupportedRoot(YospError):
    """A zero or pole is not rational, so exactness cannot be certified."""


class NotApplicable(YospError):
    """The hypotheses of a transformation or criterion do not hold."""


class SingularSeries(YospError, ZeroDivisionError):
    pass


class PoleError(YospError, ZeroDivisionError):
    pass


class ContextMismatch(YospError, ValueError):
    pass


class ViolationError(YospError):
    """An identity that must hold exactly was found to fail."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
