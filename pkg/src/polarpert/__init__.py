"""Polar decomposition and perturbation bounds for the angular factor."""

from .errors import (
    AmbiguousHypothesis,
    ConvergenceError,
    EpsilonTooLarge,
    GeometryViolated,
    InvalidMatrix,
    NotApplicable,
    NotHermitian,
    NotIndexZero,
    PolarPertError,
    ShapeMismatch,
    SpectraOverlap,
    UnknownInstance,
    ZeroOperator,
)
from .numcore import (
    DEFAULT_TOL,
    TolerancePolicy,
    adjoint,
    as_matrix,
    matmul,
    orthonormalize,
    spectral_norm,
)
from .spectral import EighResult, SvdResult, eigh, numerical_rank, pinv, reduced_min_modulus, svd
from .subspace import (
    GapReport,
    Subspace,
    SurjectivityClass,
    classify_cross_projections,
    directed_gap,
    gap_report,
    projector,
)
from .polar import (
    PolarResult,
    UnitaryExtension,
    angular_factor,
    angular_factor_adjoint_check,
    dilate_to_index_zero,
    polar_decompose,
    unitary_extension,
)
from .sylvester import SylvesterSolution, separation_bound, solve_sylvester
from .perturb import (
    Certificate,
    Hypotheses,
    certify,
    check_hypotheses,
    proof_trace_cr,
    proof_trace_main,
    scan_resolvent_angular,
    small_pert_implication,
)
from .genlab import (
    CorpusConfig,
    CorpusReport,
    InstanceSpec,
    generate,
    named_instance,
    perturb_rank_preserving,
    random_unitary,
    run_corpus,
)

__version__ = "0.1.0"
