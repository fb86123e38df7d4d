"""Entanglement and nonlocality-activation toolkit for two-qudit states."""

from .activation import ACTIVATION_TOL, ActivationResult, ancilla_R, build_cost, sigma_min, verify_ancilla
from .linalg import (
    DensityMatrix,
    EigenDecomposition,
    herm_eig,
    kron,
    min_eig,
    partial_trace,
    partial_transpose,
    permute_systems,
)
from .measures import (
    binary_entropy,
    cglmp_value,
    chsh_M,
    chsh_value,
    concurrence,
    correlation_matrix,
    eof,
    fef2,
    fef_isotropic,
    hidden_nonlocality,
    k_factor,
    popescu_filter,
    popescu_threshold,
    pure_eof,
    reference_bounds,
    sa_value,
)
from .sdp import SdpOptions, SdpProblem, SdpSolution, project_density, project_psd, solve
from .states import (
    FamilySpec,
    h_theta,
    hirsch_state,
    isotropic_state,
    magic_basis,
    max_entangled,
    psi_minus,
    werner_state,
    wi_state,
)
from .sweep import PropertyCurve, ThresholdReport, build_table, evaluate_point, find_threshold, sample_curve

__version__ = "0.1.0"

__all__ = [
    "ACTIVATION_TOL",
    "ActivationResult",
    "DensityMatrix",
    "EigenDecomposition",
    "FamilySpec",
    "PropertyCurve",
    "SdpOptions",
    "SdpProblem",
    "SdpSolution",
    "ThresholdReport",
    "ancilla_R",
    "binary_entropy",
    "build_cost",
    "build_table",
    "cglmp_value",
    "chsh_M",
    "chsh_value",
    "concurrence",
    "correlation_matrix",
    "eof",
    "evaluate_point",
    "fef2",
    "fef_isotropic",
    "find_threshold",
    "h_theta",
    "herm_eig",
    "hidden_nonlocality",
    "hirsch_state",
    "isotropic_state",
    "k_factor",
    "kron",
    "magic_basis",
    "max_entangled",
    "min_eig",
    "partial_trace",
    "partial_transpose",
    "permute_systems",
    "popescu_filter",
    "popescu_threshold",
    "project_density",
    "project_psd",
    "psi_minus",
    "pure_eof",
    "reference_bounds",
    "sa_value",
    "sample_curve",
    "sigma_min",
    "solve",
    "verify_ancilla",
    "werner_state",
    "wi_state",
]
