"""Exception types shared across the package."""


class BihomError(Exception):
    pass


class DivisionByZero(BihomError, ZeroDivisionError):
    pass


class ContextMismatch(BihomError):
    pass


class PoleAtPoint(BihomError):
    pass


class DimensionMismatch(BihomError):
    pass


class Singular(BihomError):
    pass


class InvalidStructure(BihomError):
    """A structure violates an invariant that is checked at construction."""


class PrereqFailed(BihomError):
    pass


class NotAnIdeal(BihomError):
    pass


class NotRegular(BihomError):
    pass


class NotAMorphism(BihomError):
    pass


class NonCommutingMaps(BihomError):
    pass


class NotRotaBaxter(BihomError):
    pass


class NotSurjective(BihomError):
    pass


class IntertwiningFailed(BihomError):
    pass


class PsiNotInvertible(BihomError):
    pass


class PhiPsiNotInvertible(BihomError):
    pass


class PatternMismatch(BihomError):
    pass


class ParameterExcluded(BihomError):
    pass


class UnknownTag(BihomError):
    pass


class DSLError(BihomError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = f"line {line}" if line is not None else ""
        if col is not None:
            where += f", col {col}"
        super().__init__(f"{where}: {message}" if where else message)


class DSLSyntaxError(DSLError):
    def __init__(self, line, col, expected, found=None):
        self.expected = expected
        msg = f"expected {expected}"
        if found is not None:
            msg += f", found {found!r}"
        super().__init__(msg, line, col)


class UnknownIdentifier(DSLError):
    pass


class RedefinedName(DSLError):
    pass


class RunError(DSLError):
    """An operation error raised while executing a statement; keeps the original."""

    def __init__(self, message, line=None, original=None):
        self.original = original
        super().__init__(message, line)
