"""Exception types shared across the package."""


class TateCalcError(Exception):
    """Base class for all tatecalc errors."""


class VariableMismatchError(TateCalcError):
    """Arithmetic between polynomials in different variables."""


class RingMismatchError(TateCalcError):
    """Arithmetic between series over different coefficient rings."""


class NotInvertibleError(TateCalcError):
    """Inversion requested for a non-unit."""


class InexactDivisionError(TateCalcError):
    """Exact division requested but the quotient does not exist in the ring."""


class PrecisionError(TateCalcError):
    """Access to a series coefficient beyond the reliable truncation order."""


class CapabilityError(TateCalcError):
    """Operation requires a ring capability (e.g. division by integers) the ring lacks."""


class DomainError(TateCalcError):
    """Operand violates an operation precondition (wrong constant term, Laurent tail, ...)."""
