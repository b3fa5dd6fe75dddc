"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`BosonOrderError`. The ``exit_status`` attribute is what the command
line front end returns when the error escapes a command: 2 for problems with
the caller's input, 70 for broken internal invariants.
"""
from __future__ import annotations


class BosonOrderError(Exception):
    exit_status = 2


class InternalInvariantError(BosonOrderError):
    """A consistency check inside the library failed; this is a bug."""

    exit_status = 70


class MixedExcessError(BosonOrderError, ValueError):
    pass


class NegativeExcessError(BosonOrderError, ValueError):
    pass


class OutOfRangeError(BosonOrderError, ValueError):
    pass


class NonIntegerResultError(InternalInvariantError, ArithmeticError):
    pass


class NoConvergenceError(BosonOrderError, ArithmeticError):
    pass


class DivergenceConditionError(BosonOrderError, ValueError):
    pass


class EvaluationOverflowError(BosonOrderError, OverflowError):
    pass


class SingularSystemError(BosonOrderError, ArithmeticError):
    pass


class PoleProximityError(BosonOrderError, ArithmeticError):
    pass


class ExpressionSyntaxError(BosonOrderError, ValueError):
    """Raised by the expression parser.

    ``position`` is the 0-based character offset of the offending token and
    ``expected`` the sorted tuple of token descriptions that would have been
    accepted there.
    """

    def __init__(self, message: str, position: int, expected=()):
        self.position = position
        self.expected = tuple(sorted(expected))
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)
