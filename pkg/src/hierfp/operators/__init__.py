"""Operator algebra: V, F, S, nearly nonexpansive families and their constants."""

from hierfp.operators.audit import (
    audit_lipschitz,
    audit_nonexpansive,
    audit_strong_monotonicity,
)
from hierfp.operators.constants import (
    Constants,
    compute_nu,
    require_admissible,
    scale_constants,
    validate_constants,
)
from hierfp.operators.families import (
    check_nearly_nonexpansive,
    constant_residual_family,
    deviation_estimate,
    deviation_sequence,
    perturbed_family,
)
from hierfp.operators.library import (
    affine_spd,
    combined_operator,
    constant_map,
    contraction_map,
    convex_combination,
    hierarchical_map,
    identity_map,
    linear_map,
    projection_map,
    rotation,
    zero_map,
)
from hierfp.operators.maps import (
    LipschitzMap,
    NearlyNonexpansiveFamily,
    NonexpansiveMap,
    Role,
    StronglyMonotoneOp,
)
from hierfp.operators.registry import (
    OPERATOR_BUILDERS,
    FamilySpec,
    OperatorSpec,
    get_builder,
)
from hierfp.operators.sequences import (
    SequenceSpec,
    power_sequence,
    table_sequence,
    zero_sequence,
)

__all__ = [
    "Constants",
    "FamilySpec",
    "LipschitzMap",
    "NearlyNonexpansiveFamily",
    "NonexpansiveMap",
    "OPERATOR_BUILDERS",
    "OperatorSpec",
    "Role",
    "SequenceSpec",
    "StronglyMonotoneOp",
    "affine_spd",
    "audit_lipschitz",
    "audit_nonexpansive",
    "audit_strong_monotonicity",
    "check_nearly_nonexpansive",
    "combined_operator",
    "compute_nu",
    "constant_map",
    "constant_residual_family",
    "contraction_map",
    "convex_combination",
    "deviation_estimate",
    "deviation_sequence",
    "get_builder",
    "hierarchical_map",
    "identity_map",
    "linear_map",
    "perturbed_family",
    "power_sequence",
    "projection_map",
    "require_admissible",
    "rotation",
    "scale_constants",
    "table_sequence",
    "validate_constants",
    "zero_map",
    "zero_sequence",
]
