"""Named specializations of the main iteration.

Each variant is a parameter restriction of MAIN:

    SAHU          S = I
    WANG_XU       T_n = T for a single nonexpansive T, a_n = 0
    CENG          S = I, beta = 0, T_n = T, a_n = 0
    CONVEX_COMBO  T_n = sum_i lambda_i T_i, a_n = 0
"""

from collections.abc import Sequence
from dataclasses import replace
from typing import Optional

from hierfp.core.interfaces import UsageError
from hierfp.core.models import VariantTag
from hierfp.operators.families import constant_residual_family
from hierfp.operators.library import convex_combination, identity_map
from hierfp.operators.maps import NonexpansiveMap, Role
from hierfp.schedules.schedule import Schedule
from hierfp.solver.engine import ProblemSpec

REQUIREMENTS: dict[VariantTag, str] = {
    VariantTag.MAIN: "no extra inputs",
    VariantTag.SAHU: "no extra inputs",
    VariantTag.WANG_XU: "optional single nonexpansive T (defaults to the family's limit map)",
    VariantTag.CENG: "optional single nonexpansive T (defaults to the family's limit map)",
    VariantTag.CONVEX_COMBO: "weights and maps of equal length, weights summing to 1",
}


def _mismatch(tag: VariantTag, detail: str) -> UsageError:
    return UsageError(
        f"variant {tag.value} does not apply: {detail}; requires {REQUIREMENTS[tag]}"
    )


def make_variant(
    tag: VariantTag,
    base: ProblemSpec,
    sch: Schedule,
    *,
    T: Optional[NonexpansiveMap] = None,
    weights: Optional[Sequence[float]] = None,
    maps: Optional[Sequence[NonexpansiveMap]] = None,
) -> tuple[ProblemSpec, Schedule]:
    """Restrict (base, sch) to the iteration named by tag."""
    combo_inputs = weights is not None or maps is not None
    if tag is not VariantTag.CONVEX_COMBO and combo_inputs:
        raise _mismatch(tag, "weights/maps given")
    if tag in (VariantTag.MAIN, VariantTag.SAHU, VariantTag.CONVEX_COMBO) and T is not None:
        raise _mismatch(tag, "a single map T given")

    if tag is VariantTag.MAIN:
        return base, sch
    if tag is VariantTag.SAHU:
        return replace(base, S=identity_map(base.dim, Role.NONEXPANSIVE)), sch
    if tag in (VariantTag.WANG_XU, VariantTag.CENG):
        single = T if T is not None else base.family.limit_map
        family = constant_residual_family(single)
        if tag is VariantTag.WANG_XU:
            return replace(base, family=family, witness=None), sch
        return (
            replace(
                base,
                S=identity_map(base.dim, Role.NONEXPANSIVE),
                family=family,
                witness=None,
            ),
            sch.with_beta_zero(),
        )
    if weights is None or maps is None:
        raise _mismatch(tag, "weights or maps missing")
    family = constant_residual_family(convex_combination(weights, maps))
    return replace(base, family=family, witness=None), sch
