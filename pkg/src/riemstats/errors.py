"""Exception types shared across the package.

Every class carries a short machine-readable ``code`` so that callers
(notably the CLI) can report errors without parsing messages.
"""


class GeometryError(Exception):
    """Base class for all numerical-geometry errors."""

    code = "geometry_error"


class ShapeError(GeometryError, ValueError):
    """Array input has an unusable shape (non-square, mismatched, ...)."""

    code = "shape_error"


class DomainError(GeometryError, ValueError):
    """Mathematically valid shape, but the value is outside the operation's domain."""

    code = "domain_error"


class MembershipError(DomainError):
    """A point does not satisfy the manifold's defining constraint."""

    code = "not_on_manifold"


class TangencyError(DomainError):
    """A vector is not in the tangent space at the given base point."""

    code = "not_tangent"


class CutLocusError(DomainError):
    """The logarithm is undefined: the target lies in the base point's cut locus."""

    code = "cut_locus"


class ConvergenceError(GeometryError):
    """An iterative solver did not reach its tolerance.

    Attributes
    ----------
    residual : float
        Largest residual at the final iterate.
    """

    code = "no_convergence"

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
