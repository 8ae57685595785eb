"""Certification of limits: residuals, the independent oracle, min-norm checks."""

from hierfp.diagnostics.oracle import (
    certify,
    default_tau,
    is_min_norm_problem,
    min_norm_check,
    oracle_solve,
    scale_check,
)
from hierfp.diagnostics.residuals import (
    hierarchical_residual,
    make_vi_residual,
    sample_fixed_set,
    sample_set,
    vi_residual,
)

__all__ = [
    "certify",
    "default_tau",
    "hierarchical_residual",
    "is_min_norm_problem",
    "make_vi_residual",
    "min_norm_check",
    "oracle_solve",
    "sample_fixed_set",
    "sample_set",
    "scale_check",
    "vi_residual",
]
