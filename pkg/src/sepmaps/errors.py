"""Exception types shared across the package."""


class SepmapsError(ValueError):
    """Base class for all validation errors raised by sepmaps."""


class DimensionMismatchError(SepmapsError):
    """Operands act on incompatible spaces."""


class WrongDimsError(SepmapsError):
    """Operation requires specific factor dimensions (e.g. M=2)."""


class OddDimensionError(SepmapsError):
    """An antisymmetric unitary requires an even dimension."""


class NotHermitianError(SepmapsError):
    """Input fails the Hermiticity tolerance."""


class NotPSDError(SepmapsError):
    """Input fails the positive-semidefiniteness tolerance."""


class SingularError(SepmapsError):
    """Matrix inverse requested for a rank-deficient matrix."""


class SingularMapError(SepmapsError):
    """Map inverse requested at singular parameter values."""


class ToleranceViolationError(RuntimeError):
    """Mutually exclusive verdicts co-occurred; tolerances are inconsistent."""
