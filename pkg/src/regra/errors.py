"""Exception types shared across the package."""


class RegraError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(RegraError, ValueError):
    """Vectors or subspaces of incompatible ambient dimension."""


class ZeroVector(RegraError, ValueError):
    """The zero vector does not represent a projective point."""


class BadDimension(RegraError, ValueError):
    """Subspace dimension outside the admissible range."""


class BadFlag(RegraError, ValueError):
    """A (hub, bound) pair that is not a flag with dimension gap two."""


class ParityMismatch(RegraError, ValueError):
    """Form type incompatible with the parity of the ambient dimension."""


class DegenerateBase(RegraError, ValueError):
    """A family form was given a singular symplectic base."""


class ZeroParameter(RegraError, ValueError):
    """A family form parameter that must be nonzero was zero."""


class SymplecticGeometry(RegraError):
    """Raised by regularity-layer operations on a fully isotropic geometry:
    no point is regular there, so the regular apparatus is undefined."""


class FieldTooSmall(RegraError, ValueError):
    """The witness constructions need at least two distinct nonzero scalars."""


class SingularMatrix(RegraError, ValueError):
    """A map that must be invertible has a singular matrix."""


class WrongCase(RegraError, ValueError):
    """Operation called on a geometry of the opposite pole/hyperplane case."""


class UnknownLabel(RegraError, KeyError):
    """Label not present in the carrier of the incidence structure."""


class NotATriangle(RegraError, ValueError):
    """Three blocks that do not form a triangle."""


class NotOnHorizon(RegraError, ValueError):
    """Expected a point of the selfconjugate hyperplane."""


class EmptyPencil(RegraError, ValueError):
    """Star operations need a nonempty pencil."""


class PartialMap(RegraError, ValueError):
    """Morphism tables must be total on the source carriers."""


class UnknownCheck(RegraError, KeyError):
    """Check identifier not present in the registry."""


class InadmissibleGeometry(RegraError, ValueError):
    """Check not applicable to the given geometry parameters."""


class CriterionMismatch(RegraError, RuntimeError):
    """The two redundant regularity routes disagreed; implementation drift."""
