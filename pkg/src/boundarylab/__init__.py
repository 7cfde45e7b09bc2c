"""Boundariness of convex-set elements, quantum and classical.

Computes the boundariness b(y) of points of convex sets (polytopes,
membership-oracle sets, density matrices, POVMs, qubit channels), the
optimal decomposition certificates behind it, and the norm and
minimum-error discrimination bounds it controls.
"""
from ._kernels import BACKEND as kernel_backend
from .channels import (
    ChoiOperator,
    Rank2ChannelParams,
    channel_apply,
    channel_from_json,
    channel_is_boundary,
    channel_scan_boundariness,
    choi_from_kraus,
    depolarizing_choi,
    erasure_G_eigenvalues,
    erasure_boundariness,
    erasure_choi,
    extended_action,
    identity_choi,
    prop6_nonunitary_witness,
    prop6_unitary_witness,
    rank2_case1_bound,
    rank2_extremal_choi,
    rank2_scan,
    unitary_choi,
)
from .convex import (
    ConeBase,
    ConvexOracleSet,
    DecompositionCertificate,
    Polytope,
    base_norm,
    boundariness_polytope,
    disk_boundariness,
    disk_oracle,
    hilbert_metric,
    minkowski_gauge,
    remark1_scan,
    strict_interior,
    unit_square,
    unit_triangle,
    weight_function,
)
from .discrimination import (
    DiscriminationReport,
    channel_diamond_lower_bound,
    channel_discrimination,
    observable_discrimination,
    p_error_from_norm,
    state_discrimination,
    tightness_check,
)
from .errors import (
    BoundNotImprovableError,
    ClaimViolationError,
    NumericalError,
    ValidationError,
)
from .observables import (
    Povm,
    PovmDecomposition,
    povm_boundariness,
    povm_distance_to,
    povm_is_boundary,
)
from .sampling import ScanConfig, derive_stream
from .states import (
    as_density_matrix,
    state_boundariness,
    state_bounds_check,
    state_is_boundary,
    state_oracle_set,
    state_weight,
)

__version__ = "0.1.0"

__all__ = [
    "kernel_backend",
    "__version__",
    # errors
    "ValidationError",
    "NumericalError",
    "ClaimViolationError",
    "BoundNotImprovableError",
    # convex geometry
    "Polytope",
    "ConvexOracleSet",
    "ConeBase",
    "DecompositionCertificate",
    "weight_function",
    "boundariness_polytope",
    "strict_interior",
    "remark1_scan",
    "minkowski_gauge",
    "base_norm",
    "hilbert_metric",
    "unit_triangle",
    "unit_square",
    "disk_oracle",
    "disk_boundariness",
    # states
    "as_density_matrix",
    "state_boundariness",
    "state_is_boundary",
    "state_bounds_check",
    "state_weight",
    "state_oracle_set",
    # observables
    "Povm",
    "PovmDecomposition",
    "povm_boundariness",
    "povm_is_boundary",
    "povm_distance_to",
    # channels
    "ChoiOperator",
    "Rank2ChannelParams",
    "choi_from_kraus",
    "identity_choi",
    "unitary_choi",
    "erasure_choi",
    "depolarizing_choi",
    "channel_apply",
    "extended_action",
    "channel_is_boundary",
    "erasure_G_eigenvalues",
    "erasure_boundariness",
    "channel_scan_boundariness",
    "prop6_unitary_witness",
    "prop6_nonunitary_witness",
    "rank2_extremal_choi",
    "rank2_scan",
    "rank2_case1_bound",
    "channel_from_json",
    # discrimination
    "DiscriminationReport",
    "p_error_from_norm",
    "state_discrimination",
    "observable_discrimination",
    "channel_discrimination",
    "channel_diamond_lower_bound",
    "tightness_check",
    # sampling
    "ScanConfig",
    "derive_stream",
]
