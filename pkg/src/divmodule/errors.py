"""Exception hierarchy.

The CLI maps these onto exit codes: ``InputError`` -> 1,
``PreconditionError`` -> 2, ``BudgetExceeded`` -> 3.
"""


class DivModError(Exception):
    """Base class for every error raised by this package."""


class InputError(DivModError):
    """Malformed user input (syntax, unknown variable, bad JSON job)."""


class ParseError(InputError):
    def __init__(self, message, source="", position=None):
        self.source = source
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class PreconditionError(DivModError):
    """A mathematical precondition of an operation does not hold."""


class UnitIdealError(PreconditionError):
    """The operation is undefined for the unit ideal (empty variety)."""


class ZeroIdealError(PreconditionError):
    """The operation is undefined for the zero ideal."""


class BudgetExceeded(DivModError):
    """A Groebner computation ran past its reduction-step budget."""


class CertificationError(DivModError):
    """A randomized computation could not be certified."""


class InternalError(DivModError):
    """Two independent computations disagreed; signals a bug."""
