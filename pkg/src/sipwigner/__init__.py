"""Numerical toolkit for semi-inner products, Birkhoff-James orthogonality,
and phase-isometry analysis in smooth normed spaces."""

from .errors import (
    ContractViolation,
    HypothesisViolation,
    KindAmbiguous,
    NonSmoothPoint,
    SipwignerError,
    SolverError,
    UnsupportedField,
    UnsupportedSpace,
)
from .fixtures import (
    IsometrySpec,
    SwapWitness,
    conjugation_oracle,
    default_samples,
    identity_oracle,
    make_isometry,
    make_phase_equivalent,
    matrix_oracle,
    random_isometry_spec,
    random_unitary,
    scale_oracle,
    seeded_phase,
    structured_samples,
    swap_counterexample,
    unit_sphere_samples,
)
from .orthogonality import (
    OrthVerdict,
    ScalarMin,
    best_coeffs,
    bj_orthogonal,
    minimize_scalar,
)
from .reconstruct import (
    KIND_CONJUGATE,
    KIND_LINEAR,
    Reconstruction,
    detect_kind,
    reconstruct,
    recover_pair_coeffs,
    recover_scalar_action,
    reproduction_residual,
)
from .spaces import (
    COMPLEX,
    Linf2,
    Lp,
    REAL,
    Space,
    as_vec,
    basis_vec,
    functional_value,
    gateaux_sip_oracle,
    is_smooth_point,
    linf2_space,
    lp_space,
    norm,
    sip,
    support_functional,
)
from .wigner import (
    MapOracle,
    Report,
    Witness,
    check_exact_preservation,
    check_linearity,
    check_phase_isometry_sets,
    check_wigner,
)

__version__ = "0.1.0"

__all__ = [
    "COMPLEX",
    "ContractViolation",
    "HypothesisViolation",
    "IsometrySpec",
    "KIND_CONJUGATE",
    "KIND_LINEAR",
    "KindAmbiguous",
    "Linf2",
    "Lp",
    "MapOracle",
    "NonSmoothPoint",
    "OrthVerdict",
    "REAL",
    "Reconstruction",
    "Report",
    "ScalarMin",
    "SipwignerError",
    "SolverError",
    "Space",
    "SwapWitness",
    "UnsupportedField",
    "UnsupportedSpace",
    "Witness",
    "as_vec",
    "basis_vec",
    "best_coeffs",
    "bj_orthogonal",
    "check_exact_preservation",
    "check_linearity",
    "check_phase_isometry_sets",
    "check_wigner",
    "conjugation_oracle",
    "default_samples",
    "detect_kind",
    "functional_value",
    "gateaux_sip_oracle",
    "identity_oracle",
    "is_smooth_point",
    "linf2_space",
    "lp_space",
    "make_isometry",
    "make_phase_equivalent",
    "matrix_oracle",
    "minimize_scalar",
    "norm",
    "random_isometry_spec",
    "random_unitary",
    "reconstruct",
    "recover_pair_coeffs",
    "recover_scalar_action",
    "reproduction_residual",
    "scale_oracle",
    "seeded_phase",
    "sip",
    "structured_samples",
    "support_functional",
    "swap_counterexample",
    "unit_sphere_samples",
]
