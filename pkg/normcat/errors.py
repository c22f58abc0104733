from typing import Optional


class NormCatError(Exception):
    """Base class for every error raised by normcat."""


class ValidationError(NormCatError, ValueError):
    """A structure or morphism failed its constructor validation.

    Attributes:
        which (str): The violated axiom or offending table cell, e.g.
            ``"associativity at (1, 2, 0)"`` or ``"map[3]"``.
    """

    def __init__(self, message: str, which: Optional[str] = None):
        super().__init__(message if which is None else f"{message} ({which})")
        self.which = which


class ParseError(NormCatError, ValueError):
    """An instance document could not be parsed."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class NotRepresentable(NormCatError):
    """A (co)limit does not exist as a finite object of the instance."""


class PushoutNotRepresentable(NotRepresentable):
    pass


class InitialNotRepresentable(NotRepresentable):
    pass


class OverrideMismatch(NormCatError):
    """The generic construction and a closed-form override disagree."""


class NoDiagonal(NormCatError):
    """A required factorization or diagonal does not exist."""


class NonCommutingSquare(NormCatError, ValueError):
    pass


class HomSetTooLarge(NormCatError):
    """Hom enumeration would exceed the configured candidate bound."""

    def __init__(self, message: str, candidates: int = 0, bound: int = 0):
        super().__init__(message)
        self.candidates = candidates
        self.bound = bound


class UnknownSuite(NormCatError, ValueError):
    pass
