"""Exception hierarchy.

Everything raised on purpose by the package derives from ``PearlBlowupError``.
``InputError`` covers inconsistent user data; the CLI maps it to exit code 1,
``ParseError`` to exit code 2.
"""

from __future__ import annotations


class PearlBlowupError(Exception):
    pass


class InputError(PearlBlowupError):
    pass


class NonIntegerExponent(InputError):
    pass


class NotAComplex(InputError):
    """The supplied counts give a differential with d∘d != 0."""


class NoClasses(InputError):
    pass


class NegativeMultiplicity(InputError):
    pass


class BadExponent(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class BadIndex(InputError):
    pass


class NotAdmissible(InputError):
    pass


class NotDimensionFour(InputError):
    pass


class UnknownExample(PearlBlowupError):
    pass


class ParseError(PearlBlowupError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class ValidationError(InputError):
    """Aggregates every problem found in a document, not just the first."""

    def __init__(self, items: list[str]):
        self.items = list(items)
        super().__init__("; ".join(self.items) if self.items else "validation failed")
