"""Exception types shared across the package."""


class DomainError(Exception):
    """Base class for mathematically invalid inputs (poles, boundaries, degeneracies)."""


class ParseError(Exception):
    """Malformed textual input: quaternion literal, expression, or JSON payload."""


class PoleError(DomainError):
    """Evaluation requested at a point where a denominator vanishes."""


class DegenerateCenter(DomainError):
    """Spherical expansion coefficients requested at a real center."""


class RealPoint(DomainError):
    """Spherical derivative requested at a real point."""


class NonConvergence(DomainError):
    """The polynomial root finder failed to reach its residual tolerance."""


class SingularMatrix(DomainError):
    """A matrix operation requires an invertible matrix."""


class NotHermitian(DomainError):
    """The two-sided action coincidence requires a Hermitian matrix."""


class NotSp11(DomainError):
    """Normal-form extraction requires a matrix of the indefinite unitary group."""


class DegenerateComposite(DomainError):
    """An action produced an identically-zero composite denominator."""


class DegenerateSwap(DomainError):
    """The left/right factor swap hit a singular linear solve."""


class OutsideBall(DomainError):
    """A point of the open unit ball was required."""


class CoincidentPoints(DomainError):
    """Two distinct points were required."""
