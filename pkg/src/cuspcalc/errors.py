"""Exception hierarchy.

Every failure raised by the toolkit derives from :class:`CuspcalcError`.
The three direct subclasses fix the CLI exit code: parse errors exit 1,
precondition violations exit 2 and tripped internal invariants exit 3.
"""

from __future__ import annotations


class CuspcalcError(Exception):
    exit_code = 2


class ParseError(CuspcalcError):
    exit_code = 1


class PreconditionError(CuspcalcError):
    exit_code = 2


class InternalInconsistency(CuspcalcError):
    exit_code = 3


class UnknownVariable(PreconditionError):
    pass


class DimensionMismatch(PreconditionError):
    pass


class DivisionByZeroPolynomial(PreconditionError):
    pass


class ZeroDegreeInput(PreconditionError):
    pass


class LocalOrderRejected(PreconditionError):
    pass


class GlobalOrderRejected(PreconditionError):
    pass


class InfiniteDimensional(PreconditionError):
    pass


class NonIsolated(PreconditionError):
    pass


class EliminationFailed(PreconditionError):
    pass


class PointNotOnVariety(PreconditionError):
    pass


class PositiveDimensionalSingularLocus(PreconditionError):
    pass


class DegenerateFibration(PreconditionError):
    pass


class NonNodalCensus(PreconditionError):
    pass


class UnknownResolutionStructure(PreconditionError):
    pass


class InconsistentInput(PreconditionError):
    pass


class ParityViolation(PreconditionError):
    pass


class AmbiguousChase(PreconditionError):
    def __init__(self, message: str, interval: tuple[int, int] | None = None):
        super().__init__(message)
        self.interval = interval
