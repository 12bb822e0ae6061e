"""Exception hierarchy shared by every module."""


class SNNSError(Exception):
    """Base class for all package errors."""


class NonFiniteError(SNNSError, ValueError):
    pass


class NoConvergenceError(SNNSError, RuntimeError):
    pass


class NegativeEigenvalueError(SNNSError, ValueError):
    pass


class DimMismatchError(SNNSError, ValueError):
    pass


class BadSubsystemError(SNNSError, ValueError):
    pass


class BadParamError(SNNSError, ValueError):
    pass


class ShapeMismatchError(SNNSError, ValueError):
    pass


class ZeroTraceError(SNNSError, ValueError):
    pass


class BranchCutError(SNNSError, ArithmeticError):
    """A mixing-layer cosh evaluated (numerically) at zero; its phase is undefined."""


class ZeroNormError(SNNSError, ArithmeticError):
    pass


class ZeroOverlapError(SNNSError, ArithmeticError):
    pass


class DivergedError(SNNSError, RuntimeError):
    pass


class InconsistentPartitionsError(SNNSError, ValueError):
    pass


class InfiniteQREError(SNNSError, ArithmeticError):
    pass


class InvariantViolationError(SNNSError, ValueError):
    def __init__(self, invariant, detail=""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}" if detail else invariant)


class ConfigError(SNNSError, ValueError):
    pass


class ParseError(SNNSError, ValueError):
    pass
