"""Exception hierarchy.

``ValidationError`` subclasses describe bad input (CLI exit status 2);
``ConventionError`` subclasses mean an internal invariant failed (exit 1).
"""


class FMLatticeError(Exception):
    pass


class ValidationError(FMLatticeError, ValueError):
    pass


class ConventionError(FMLatticeError, AssertionError):
    """An identity that must hold under the fixed homology conventions failed."""


class DimensionMismatch(ValidationError):
    pass


class VarianceMismatch(ValidationError):
    pass


class Singular(ValidationError):
    pass


class NotSkew(ValidationError):
    pass


class OddDimension(ValidationError):
    pass


class NotSublattice(ValidationError):
    pass


class ZeroPolynomial(ValidationError):
    pass


class NotPrincipallyPolarized(ValidationError):
    pass


class WrongModel(ValidationError):
    pass


class NotIsometric(ValidationError):
    pass


class NotIsogeny(ValidationError):
    pass


class YNotInvertible(ValidationError):
    pass


class DegenerateProjection(ValidationError):
    pass


class FactorizationNotFound(FMLatticeError):
    pass


class ExtensionAmbiguous(ConventionError):
    pass


class NotSymmetric(ConventionError):
    pass


class NotPerfectSquare(ConventionError):
    pass
