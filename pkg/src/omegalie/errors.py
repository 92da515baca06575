"""Exception types shared across the package."""


class OmegaAlgebraError(Exception):
    """Base class for all domain errors raised by this package."""


class SingularMatrix(OmegaAlgebraError):
    """A matrix intended as a basis change is numerically singular."""


class AmbiguousSpectrum(OmegaAlgebraError):
    """A spectral decision (eigenvalue clustering, Jordan rank pivot)
    falls inside the guard band between "clearly equal" and "clearly
    distinct".  Callers should report ill-conditioning rather than guess."""


class ImpossibleCaseD(OmegaAlgebraError):
    """The rank-3 dispatch met an adjoint operator with a size-2 nilpotent
    block plus a nonzero eigenvalue.  No algebra of this kind exists, so
    reaching it signals numerical inconsistency in the input."""


class InconsistentRank(OmegaAlgebraError):
    """Rank information contradicts the structure implied by the branch
    (e.g. the adjoint of a radical vector does not have rank 2)."""


class ZeroParameter(OmegaAlgebraError):
    """A family parameter that must be nonzero is zero."""


class ParameterOutOfDomain(OmegaAlgebraError):
    """A catalog constructor was called with a parameter outside the
    family's domain."""


class ValidationFailure(OmegaAlgebraError):
    """An algebra failed compatibility validation; carries the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DocumentError(OmegaAlgebraError):
    """An input document could not be parsed into an algebra."""
