"""Numerical toolkit for almost isotropic algebraic curvature tensors.

Construct model tensors kappa*R1 + tau*RA, test almost isotropy, recover
the decomposition, classify Kahler tensors into their four structural
cases, and reconstruct skew projective classes from sampled totally
geodesic distributions on unit spheres.
"""

from .curvature import (
    CurvatureTensor,
    SymmetryReport,
    berger_check,
    build_model,
    build_r1,
    build_ra,
    holomorphic_sectional,
    jacobi_operator,
    nullity_space,
    ricci,
    sectional_curvature,
    validate_symmetries,
)
from .errors import (
    ConventionViolation,
    CurvlabError,
    DimensionMismatch,
    EmptySamples,
    InconsistentKappa,
    InconsistentTau,
    InputFormatError,
    MathematicalRejection,
    NoDominantEigenvalue,
    NonOrthonormalBasis,
    NonPositiveTolerance,
    NotAlmostIsotropic,
    NotKahler,
    NotOrthonormal,
    NotSkew,
    NotUnit,
    OddDimension,
    ParseError,
    PreconditionViolated,
    SchemaVersionUnsupported,
    SignResolutionFailure,
    StructureViolation,
    SymmetryViolation,
    ZeroOperator,
)
from .io import load_samples, load_tensor, save_samples, save_tensor
from .isotropy import (
    Decomposition,
    IsotropyReport,
    almost_isotropy_scan,
    eigenspace_at,
    extremal_curvature,
    kappa_at,
    recover_decomposition,
)
from .kahler import (
    BAnalysis,
    Case1,
    Case2,
    Case3,
    Case4,
    KahlerClass,
    analyze_b_operator,
    classify_kahler,
    commute_type,
    einstein_check,
    identity_residuals,
    relations_residuals,
)
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    projector,
    random_skew,
    rank_with_tol,
    standard_complex_structure,
    symmetric_spectrum,
    unit_sphere_samples,
)
from .sphere import (
    DistributionSamples,
    FitResult,
    distribution_at,
    fit_skew_from_samples,
    sphere_structure_check,
    tangency_profile,
)

__version__ = "0.1.0"

__all__ = [
    "BAnalysis",
    "Case1",
    "Case2",
    "Case3",
    "Case4",
    "ConventionViolation",
    "CurvatureTensor",
    "CurvlabError",
    "DEFAULT_TOL",
    "Decomposition",
    "DimensionMismatch",
    "DistributionSamples",
    "EmptySamples",
    "FitResult",
    "InconsistentKappa",
    "InconsistentTau",
    "InputFormatError",
    "IsotropyReport",
    "KahlerClass",
    "MathematicalRejection",
    "NoDominantEigenvalue",
    "NonOrthonormalBasis",
    "NonPositiveTolerance",
    "NotAlmostIsotropic",
    "NotKahler",
    "NotOrthonormal",
    "NotSkew",
    "NotUnit",
    "OddDimension",
    "ParseError",
    "PreconditionViolated",
    "SchemaVersionUnsupported",
    "SignResolutionFailure",
    "StructureViolation",
    "Subspace",
    "SymmetryReport",
    "SymmetryViolation",
    "ZeroOperator",
    "almost_isotropy_scan",
    "analyze_b_operator",
    "berger_check",
    "build_model",
    "build_r1",
    "build_ra",
    "classify_kahler",
    "commute_type",
    "distribution_at",
    "eigenspace_at",
    "einstein_check",
    "extremal_curvature",
    "fit_skew_from_samples",
    "holomorphic_sectional",
    "identity_residuals",
    "jacobi_operator",
    "kappa_at",
    "load_samples",
    "load_tensor",
    "nullity_space",
    "projector",
    "random_skew",
    "rank_with_tol",
    "recover_decomposition",
    "relations_residuals",
    "ricci",
    "save_samples",
    "save_tensor",
    "sectional_curvature",
    "sphere_structure_check",
    "standard_complex_structure",
    "symmetric_spectrum",
    "tangency_profile",
    "unit_sphere_samples",
    "validate_symmetries",
]
