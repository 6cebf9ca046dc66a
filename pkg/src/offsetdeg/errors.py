"""Exception hierarchy shared by the engine and the command line front end."""

from __future__ import annotations


class OffsetDegError(Exception):
    """Base class for every error raised by offsetdeg."""

    exit_code = 1


class UniverseMismatch(OffsetDegError, ValueError):
    """Two polynomials over different variable universes were combined."""


class UnknownVariable(OffsetDegError, KeyError):
    """A variable name is not part of the universe."""

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else "unknown variable"


class UndefinedDegree(OffsetDegError, ValueError):
    """Degree (or content) of the zero polynomial was requested."""


class ParseError(OffsetDegError, ValueError):
    """Malformed expression or surface file.

    ``position`` is the 0-based character offset of the offending token when
    it is known.
    """

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class AssumptionViolation(OffsetDegError):
    """The input surface violates a standing assumption of the degree formula."""

    exit_code = 2


class DegenerateParametrization(AssumptionViolation):
    """The parametrization has an identically vanishing normal vector."""


class FormulaInapplicable(OffsetDegError):
    """A hypothesis of the generalized resultant argument fails for this input."""

    exit_code = 3

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class ConsistencyError(OffsetDegError, ArithmeticError):
    """An internal algebraic identity failed; the result cannot be trusted."""

    exit_code = 4


class InexactDivision(ConsistencyError):
    """A polynomial division that must be exact left a nonzero remainder."""


class BudgetExceeded(OffsetDegError):
    """The wall clock budget given by OFFSETDEG_MAX_SECONDS ran out."""

    exit_code = 5
