"""Exception types shared across the engine."""


class ClusterError(Exception):
    """Base class for all engine errors."""


class NonMonomialInverse(ClusterError):
    """A negatively-exponentiated variable was mapped to a non-unit image."""


class NonExactDivision(ClusterError):
    """An exchange division left a remainder (input matrix is not totally mutable)."""


class BudgetExceeded(ClusterError):
    """A Laurent operation went past the configured term budget."""


class NotMutable(ClusterError):
    """Matrix mutation produced a top block that is not sign-skew-symmetric."""


class InvalidMatrix(ClusterError):
    """Input matrix fails the preconditions of the requested construction."""


class InhomogeneityBug(ClusterError):
    """A cluster variable failed to be homogeneous under the initial grading."""


class OrbitNotMutable(ClusterError):
    """Orbit mutation is obstructed by a group loop or group 2-cycle."""


class NotSignSkewSymmetric(ClusterError):
    """Folding produced a matrix that is not sign-skew-symmetric."""


class RepresentativeDependent(ClusterError):
    """Folded entries depend on the chosen orbit representative; the group action
    does not preserve the quiver's arrow matrix."""


class UnsupportedCovering(ClusterError):
    """No built-in covering construction applies to this matrix."""
