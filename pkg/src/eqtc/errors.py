"""Exception hierarchy shared by every module."""


class EqtcError(Exception):
    """Base class for all library errors."""


class InputError(EqtcError, ValueError):
    """Malformed or inconsistent user input."""


class ParseError(InputError):
    """Syntax error in a facet-list source, with position information."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class BudgetError(EqtcError):
    """A configured resource budget would be exceeded.

    Raised instead of returning a partial (and therefore wrong) answer.
    """


class InvalidActionError(InputError):
    """A group action that does not preserve the complex, or cannot be made regular."""


class RingAxiomError(InputError):
    """A multiplication table that is not a unital, associative, graded-commutative algebra."""
