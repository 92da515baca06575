"""3-dimensional skew-bracket algebras with a compatible bilinear form:
representation, validation, constructive classification with verified
basis-change witnesses, canonical catalog, isomorphism decisions, and a
randomized property oracle."""

from .catalog import CatalogEntry, BIANCHI_TYPES, bianchi, entry, model
from .classify import (ClassificationReport, canonicalize_ratio, classify,
                       complexify, lie_classify)
from .core import (COMPLEX, REAL, Algebra, Bracket, OmegaForm, Tolerances,
                   ValidationReport, Witness, adjoint, apply_bracket,
                   condition_number, derived_rank, induced_omega, jacobiator,
                   jacobiator_general, max_difference, omega_radical,
                   transform, validate)
from .eigen import (Diag, DoubleBlock, KernelTooBig, NilFull, Rotation,
                    SpectralType, ZeroBlockPlus, backward_errors, cubic_roots,
                    eigenvalues3, eigenvalues3_with_errors, spectral_type)
from .errors import (AmbiguousSpectrum, DocumentError, ImpossibleCaseD,
                     InconsistentRank, OmegaAlgebraError,
                     ParameterOutOfDomain, SingularMatrix, ValidationFailure,
                     ZeroParameter)
from .isomorphism import IsoResult, is_isomorphic, search_witness
from .labels import ClassLabel, same_label
from .oracle import (SummaryReport, Table1Report, TrialConfig,
                     random_basis_change, random_skew_bracket,
                     run_completeness, run_invariance, run_table1)

__version__ = "0.1.0"

__all__ = [
    "Algebra", "AmbiguousSpectrum", "BIANCHI_TYPES", "Bracket",
    "CatalogEntry", "ClassLabel", "ClassificationReport", "COMPLEX", "Diag",
    "DocumentError", "DoubleBlock", "ImpossibleCaseD", "InconsistentRank",
    "IsoResult", "KernelTooBig", "NilFull", "OmegaAlgebraError", "OmegaForm",
    "ParameterOutOfDomain", "REAL", "Rotation", "SingularMatrix",
    "SpectralType", "SummaryReport", "Table1Report", "Tolerances",
    "TrialConfig", "ValidationFailure", "ValidationReport", "Witness",
    "ZeroBlockPlus", "ZeroParameter", "adjoint", "apply_bracket",
    "backward_errors", "bianchi", "canonicalize_ratio", "classify",
    "complexify", "condition_number", "cubic_roots", "derived_rank", "entry",
    "eigenvalues3", "eigenvalues3_with_errors", "induced_omega",
    "is_isomorphic", "jacobiator", "jacobiator_general", "lie_classify",
    "max_difference", "model", "omega_radical", "random_basis_change",
    "random_skew_bracket", "run_completeness", "run_invariance", "run_table1",
    "same_label", "search_witness", "spectral_type", "transform", "validate",
]
