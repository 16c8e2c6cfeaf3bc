"""Exception hierarchy shared by every module of the package."""


class SpaceformError(ValueError):
    """Base class for all domain errors raised by the package."""


class ZeroDenominator(SpaceformError, ZeroDivisionError):
    pass


class NotInvertible(SpaceformError, ZeroDivisionError):
    pass


class DomainError(SpaceformError):
    pass


class OddDimension(DomainError):
    pass


class EvenDimension(DomainError):
    pass


class CurvatureZero(DomainError):
    pass


class ZeroCurvature(DomainError):
    pass


class DimensionTooLarge(DomainError):
    pass


class UnsupportedVariant(DomainError):
    pass


class UnsupportedG(DomainError):
    pass


class NonIntegerResult(SpaceformError):
    """An Euler characteristic did not reduce to an integer; indicates a bug."""


class ExtensionResidue(SpaceformError):
    """A value expected in the base field still carries a sqrt component."""


class MeshTooCoarse(SpaceformError):
    pass


class CoincidentCurvatures(DomainError):
    pass


class ZeroDensity(DomainError):
    pass


class ExcludedParameter(DomainError):
    pass


class DegenerateBand(DomainError):
    pass


class SignError(DomainError):
    pass


class PiExponentMismatch(SpaceformError, TypeError):
    """Attempt to add pi-graded values of different degree."""
