"""Exception hierarchy shared by every module in the package."""

from fractions import Fraction


class MeasureError(Exception):
    """Base class for all errors raised by :mod:`caratheodory`."""


class DomainError(MeasureError, ValueError):
    """A value lies outside the domain an operation accepts (e.g. an endpoint outside [0, 1])."""


class UsageError(MeasureError, ValueError):
    """An operation was called with incompatible arguments (e.g. elements of different algebras)."""


class ParseError(UsageError):
    """Syntax error in a set expression; carries a 1-based line and column."""

    def __init__(self, message, line, column):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class CertificationIncomplete(MeasureError):
    """A countable union could not be certified to the requested stage.

    ``achieved`` is the best precision 1/L that *was* certified (``None`` if
    not even stage 1 could be), ``requested`` the stage that failed.
    """

    def __init__(self, requested, achieved):
        self.requested = requested
        self.achieved = None if achieved is None else Fraction(achieved)
        shown = "nothing" if achieved is None else f"1/{self.achieved.denominator}"
        super().__init__(
            f"tail certificate exhausted at stage {requested}; certified only to {shown}"
        )
