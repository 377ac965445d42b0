"""Exception types raised across the package."""


class AnyonWeaveError(Exception):
    """Base class for all package errors."""


class SingularAlpha(AnyonWeaveError, ValueError):
    """The parameter makes a required quantum bracket vanish."""


class IndexOutOfRange(AnyonWeaveError, IndexError):
    pass


class DegenerateBasis(AnyonWeaveError, ValueError):
    pass


class SingularChangeOfBasis(AnyonWeaveError, ValueError):
    pass


class EmptySpace(AnyonWeaveError, ValueError):
    """The requested fusion space has dimension zero."""


class NonInvertibleBlock(AnyonWeaveError, ValueError):
    pass


class IndefiniteForm(AnyonWeaveError, ValueError):
    """An orthonormal basis was requested for a form that is not positive definite."""


class DimensionMismatch(AnyonWeaveError, RuntimeError):
    pass


class LeakageDetected(AnyonWeaveError, RuntimeError):
    pass


class UnknownGate(AnyonWeaveError, KeyError):
    pass
