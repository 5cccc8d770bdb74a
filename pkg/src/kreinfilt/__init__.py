"""Indefinite-metric function theory for cyclic filter families.

The package covers five layers that build on each other:

* ``indefinite`` -- signature matrices, J-adjoints and the coefficient
  inner product on vector-valued power series;
* ``matfun`` -- Laurent matrix functions on the disk and state-space
  realizations, with exact coefficient arithmetic;
* ``kernels`` -- reproducing kernels of contractive / J-unitary /
  non-square functions, sampled Gram matrices, negative-squares
  estimation and composition identities;
* ``stein`` -- the structure equation certifying J-unitarity on the
  circle by a state metric H, whose inertia counts negative squares;
* ``cuntz`` / ``filters`` -- branching isometries with exact Cuntz
  relations on truncated spaces, and the cyclic-symmetric filter-bank
  family with its decomposition, polyphase factorization and
  periodic-system variants.
"""

from .errors import (
    DeterminantVanishes,
    DimensionMismatch,
    EvalAtZeroWithPole,
    ExponentNotMultipleOfN,
    HSingular,
    KreinfiltError,
    NegativeExponent,
    NoSimilarity,
    NoSolution,
    NotHermitian,
    NotInCN,
    NotInvolution,
    NotMinimalWarning,
    NotPeriodicSymmetric,
    NotSquare,
    PNotJUnitary,
    PoleAtSample,
    PowerNotIdentity,
    RankDeficientWarning,
    ResidualTooLarge,
    SingularResolvent,
    TNotInvertible,
    TooManyPolesOnCircle,
    TruncationTooSmall,
)
from .indefinite import (
    Signature,
    SignatureMatrix,
    h2j_inner,
    hermitian_signature,
    j_adjoint,
    validate_signature_matrix,
)
from .matfun import (
    LaurentMatrixFunction,
    Realization,
    blaschke_factor,
    inv_sqrt,
    unit_roots,
)
from .kernels import (
    KernelSpec,
    SampleGrid,
    composition_adjoint_image,
    composition_difference_kernel,
    composition_unitary_check,
    estimate_negative_squares,
    extended_kernel,
    gram_matrix,
    junitary_kernel,
    kernel_eval,
    nonsquare_kernel,
    positivity_test,
    power_map,
    rotation_map,
    schur_kernel,
)
from .stein import (
    SteinCertificate,
    check_junitary_on_circle,
    coisometric_block_check,
    kernel_factorization_check,
    solve_stein,
)
from .cuntz import (
    ShiftRealizationMaps,
    SplitResult,
    gleason_decompose,
    iterate_isometries,
    ptheta_inner,
    s_adjoint,
    s_apply,
    split,
    verify_cuntz,
    word_exponent,
)
from .filters import (
    FilterBank,
    check_cyclic_symmetry,
    cyclic_shift_matrix,
    d_at_one,
    d_matrix,
    decompose_components,
    delayed_dft,
    dft_matrix,
    filter_matrix,
    krein_orthogonality_check,
    periodic_filter_matrix,
    periodic_to_symmetric,
    polyphase_factor,
    product_depends_on,
    rotation_quotient,
    symmetry_similarity,
    validate_component_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "KreinfiltError",
    "DimensionMismatch",
    "NotHermitian",
    "NotInvolution",
    "NegativeExponent",
    "EvalAtZeroWithPole",
    "SingularResolvent",
    "PoleAtSample",
    "NoSolution",
    "ResidualTooLarge",
    "HSingular",
    "TooManyPolesOnCircle",
    "TruncationTooSmall",
    "NotSquare",
    "PowerNotIdentity",
    "DeterminantVanishes",
    "PNotJUnitary",
    "NotInCN",
    "ExponentNotMultipleOfN",
    "NoSimilarity",
    "TNotInvertible",
    "NotPeriodicSymmetric",
    "NotMinimalWarning",
    "RankDeficientWarning",
    "Signature",
    "SignatureMatrix",
    "validate_signature_matrix",
    "hermitian_signature",
    "j_adjoint",
    "h2j_inner",
    "LaurentMatrixFunction",
    "Realization",
    "blaschke_factor",
    "unit_roots",
    "inv_sqrt",
    "KernelSpec",
    "SampleGrid",
    "schur_kernel",
    "junitary_kernel",
    "nonsquare_kernel",
    "extended_kernel",
    "kernel_eval",
    "gram_matrix",
    "estimate_negative_squares",
    "positivity_test",
    "power_map",
    "rotation_map",
    "composition_difference_kernel",
    "composition_adjoint_image",
    "composition_unitary_check",
    "SteinCertificate",
    "solve_stein",
    "check_junitary_on_circle",
    "kernel_factorization_check",
    "coisometric_block_check",
    "SplitResult",
    "s_apply",
    "split",
    "s_adjoint",
    "verify_cuntz",
    "iterate_isometries",
    "word_exponent",
    "ptheta_inner",
    "ShiftRealizationMaps",
    "gleason_decompose",
    "FilterBank",
    "cyclic_shift_matrix",
    "dft_matrix",
    "delayed_dft",
    "filter_matrix",
    "check_cyclic_symmetry",
    "validate_component_matrix",
    "decompose_components",
    "krein_orthogonality_check",
    "rotation_quotient",
    "polyphase_factor",
    "product_depends_on",
    "periodic_to_symmetric",
    "periodic_filter_matrix",
    "d_matrix",
    "d_at_one",
    "symmetry_similarity",
]
