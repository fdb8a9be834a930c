"""Exception hierarchy shared by all modules."""


class IcsieError(Exception):
    """Base class for all library errors."""


class NotPrimePowerError(IcsieError):
    pass


class FieldTooLargeError(IcsieError):
    pass


class FieldMismatchError(IcsieError):
    pass


class ParseError(IcsieError):
    pass


class BudgetExceededError(IcsieError):
    pass


class NoSolutionError(IcsieError):
    pass


class InconsistentError(IcsieError):
    pass


class DegenerateError(IcsieError):
    pass


class CycleTooSmallError(IcsieError):
    pass


class DistanceTooSmallError(IcsieError):
    pass


class NotUnipartiteError(IcsieError):
    pass
