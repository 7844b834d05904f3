"""Exception hierarchy for rieszwalk."""


class RieszWalkError(Exception):
    """Base class for all package errors."""


class FieldMismatchError(RieszWalkError, TypeError):
    """Operands live in different scalar fields (exact vs double)."""


class NonInvertibleSeriesError(RieszWalkError, ZeroDivisionError):
    """Series reciprocal requested for a series with vanishing constant term."""


class NotDivisibleError(RieszWalkError, ValueError):
    """A series is not divisible by the requested power of z."""


class PreconditionError(RieszWalkError, ValueError):
    """An operation was called with inputs outside its domain."""


class NumericalBreakdownError(RieszWalkError, ArithmeticError):
    """Floating point round-off pushed a quantity outside its admissible range."""


class StructureViolationError(RieszWalkError, ValueError):
    """A Verblunsky sequence lacks the sieve structure of its measure."""


class ParityViolationError(RieszWalkError, ValueError):
    """A walk state carries amplitude on a sublattice forbidden at its time."""
