"""Exception types raised by the package."""


class DceArmaError(ValueError):
    """Base class for all package errors."""


class NonFiniteCoefficient(DceArmaError):
    pass


class UnstableModel(DceArmaError):
    pass


class BurnInOverflow(DceArmaError, ArithmeticError):
    pass


class BlockTooShort(DceArmaError):
    pass


class DimensionMismatch(DceArmaError):
    pass


class InsufficientImpulseLength(DceArmaError):
    pass


class IndexBelowThreshold(DceArmaError):
    pass


class DegenerateGrid(DceArmaError):
    pass


class SampleStarvation(DceArmaError):
    pass


class InvalidBand(DceArmaError):
    pass


class AtomAssignmentMismatch(DceArmaError):
    pass


class IllConditioned(DceArmaError, ArithmeticError):
    pass


class SpecParseError(DceArmaError):
    """Malformed model-spec file."""
