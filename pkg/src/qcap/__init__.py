"""Capacity bounds, feasibility certificates, and super-additivity scans
for the platypus, erasure, and multilevel amplitude damping channels."""

from .capacities import (
    CapacityResult,
    Ensemble,
    ce_platypus,
    ce_stationarity_residual,
    coherent_information,
    holevo,
    mutual_information,
    platypus_private_ensemble,
    private_information,
    q1_platypus,
    q_erasure,
    q_mad,
)
from .certificates import (
    CapacitySummary,
    CertificateReport,
    beta_feasible_point,
    capacity_summary,
    report_from_json,
    report_to_json,
    transposition_bound,
    transposition_bound_from_feasible_point,
    transposition_feasible_point,
    verify_beta_certificate,
    verify_transposition_certificate,
)
from .channels import (
    DensityMatrix,
    ProbabilityVector,
    QuantumChannel,
    apply,
    choi,
    complement,
    compose,
    erasure,
    mad,
    partial_transpose_b,
    platypus,
    tensor_channels,
)
from .numerics import Spectrum, hermitian_spectrum, shannon_entropy, von_neumann_entropy
from .superadd import (
    GapReport,
    RegionTable,
    gap,
    ic_joint_erasure_exact,
    ic_joint_erasure_lower,
    ic_joint_erasure_lower_certified,
    ic_joint_mad_exact,
    ic_joint_mad_lower,
    joint_input_state,
    matrix_A_spectrum,
    matrix_B_spectrum,
    region_scan,
)

__all__ = [
    "CapacityResult",
    "CapacitySummary",
    "CertificateReport",
    "DensityMatrix",
    "Ensemble",
    "GapReport",
    "ProbabilityVector",
    "QuantumChannel",
    "RegionTable",
    "Spectrum",
    "apply",
    "beta_feasible_point",
    "capacity_summary",
    "ce_platypus",
    "ce_stationarity_residual",
    "choi",
    "coherent_information",
    "complement",
    "compose",
    "erasure",
    "gap",
    "hermitian_spectrum",
    "holevo",
    "ic_joint_erasure_exact",
    "ic_joint_erasure_lower",
    "ic_joint_erasure_lower_certified",
    "ic_joint_mad_exact",
    "ic_joint_mad_lower",
    "joint_input_state",
    "mad",
    "matrix_A_spectrum",
    "matrix_B_spectrum",
    "mutual_information",
    "partial_transpose_b",
    "platypus",
    "platypus_private_ensemble",
    "private_information",
    "q1_platypus",
    "q_erasure",
    "q_mad",
    "region_scan",
    "report_from_json",
    "report_to_json",
    "shannon_entropy",
    "transposition_bound",
    "transposition_bound_from_feasible_point",
    "transposition_feasible_point",
    "verify_beta_certificate",
    "verify_transposition_certificate",
    "von_neumann_entropy",
]

__version__ = "0.1.0"
