"""Exception hierarchy shared by all modules."""


class ToricError(Exception):
    """Base class for computation errors raised by toricgf."""


class ZeroVector(ToricError, ValueError):
    pass


class DependentGenerators(ToricError, ValueError):
    pass


class NotStrictlyConvex(ToricError, ValueError):
    pass


class NotFullDimensional(ToricError, ValueError):
    pass


class NotAFace(ToricError, ValueError):
    pass


class NotSimplicial(ToricError, ValueError):
    pass


class NotDecomposable(ToricError, RuntimeError):
    """A lattice point could not be written in the generators.

    Only happens when the generator set does not generate the semigroup,
    so it signals an internal inconsistency rather than bad user input.
    """


class CellNotInComplex(ToricError, KeyError):
    pass


class FanNotFaceClosed(ToricError, ValueError):
    pass


class ZeroDenominatorVector(ToricError, ValueError):
    pass


class GradingNotPositive(ToricError, ValueError):
    pass


class NonPositiveDenominatorGrading(ToricError, ValueError):
    pass


class InputError(ValueError):
    """Malformed input document; carries line and column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column
