"""Exception hierarchy shared by all flaghom modules."""


class FlagHomError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpec(FlagHomError, ValueError):
    pass


class NotARoot(FlagHomError, ValueError):
    pass


class OrbitInconsistent(FlagHomError, ValueError):
    pass


class MissingRoot(FlagHomError, ValueError):
    pass


class GroupTooLarge(FlagHomError):
    pass


class NotMinimalRepresentative(FlagHomError, ValueError):
    pass


class NotProportional(FlagHomError, ArithmeticError):
    """Raised when phi(w) - phi(w') is not an integer multiple of beta."""


class SignInconsistency(FlagHomError):
    """No sign assignment makes the boundary square to zero."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report or {}


class ComplexInvalid(FlagHomError):
    pass


class CorruptCache(FlagHomError):
    pass


class CheckFailed(FlagHomError):
    pass
