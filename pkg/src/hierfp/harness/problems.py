"""Built-in problem registry and the builder shared with inline problems."""

import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from hierfp.core.interfaces import ConfigError
from hierfp.logging_config import get_logger
from hierfp.operators.audit import (
    audit_lipschitz,
    audit_nonexpansive,
    audit_strong_monotonicity,
)
from hierfp.operators.constants import Constants
from hierfp.operators.maps import Role
from hierfp.operators.registry import (
    AffineSpdConfig,
    ComboConfig,
    ConstantConfig,
    ConstantResidualFamilyConfig,
    FamilySpec,
    IdentityConfig,
    LinearConfig,
    OperatorSpec,
    PerturbedFamilyConfig,
    ProjectionConfig,
    RotationConfig,
    ZeroConfig,
)
from hierfp.operators.sequences import PowerSequence
from hierfp.schedules.schedule import PowerScheduleConfig, ScheduleSpec
from hierfp.sets import Ball, Box, ConvexSetSpec, Hyperplane
from hierfp.solver.engine import ProblemSpec, StoppingRule

logger = get_logger(__name__)

AUDIT_PAIRS = 200


class ProblemConfig(BaseModel):
    """Declarative problem: sets, operators, family, constants and run defaults."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    name: str = "inline"
    description: str = ""
    set_C: ConvexSetSpec
    S: OperatorSpec
    V: OperatorSpec
    F: OperatorSpec
    family: FamilySpec
    constants: Constants
    sampling_box: Optional[Box] = None
    schedule: ScheduleSpec = Field(
        default_factory=lambda: PowerScheduleConfig(s=0.9, t=1.8)
    )
    x1: Optional[tuple[float, ...]] = None
    stopping: Optional[StoppingRule] = None
    combo: Optional[ComboConfig] = None
    waive: list[str] = Field(default_factory=list)

    def resolved_sampling_box(self) -> Optional[Box]:
        if self.sampling_box is not None:
            return self.sampling_box
        box = self.set_C.bounding_box()
        return box if isinstance(box, Box) else None


_BOX = Box.cube(10.0, 2)
_LINE = Hyperplane(a=(1.0, 1.0), b=2.0)
# Registry problems stop once both the step norm and the fixed-point residual
# are small on the scale the certificates check; the cap stays at 2e5 steps.
_REGISTRY_STOP = StoppingRule(step_tol=1e-6, residual_tol=1e-4)

PROBLEM_REGISTRY: dict[str, ProblemConfig] = {
    "P1": ProblemConfig(
        name="P1",
        description="minimum-norm point of the line x1 + x2 = 2",
        set_C=_BOX,
        S=ZeroConfig(dim=2),
        V=ZeroConfig(dim=2),
        F=IdentityConfig(dim=2),
        family=ConstantResidualFamilyConfig(
            base=ProjectionConfig(set=_LINE), a=PowerSequence(coef=1.0, p=2.0)
        ),
        constants=Constants(mu=1.0, rho=0.0, gamma=0.0, lip=1.0, eta=1.0),
        schedule=PowerScheduleConfig(s=0.9, t=1.8),
        x1=(5.0, -3.0),
        stopping=_REGISTRY_STOP,
    ),
    "P2": ProblemConfig(
        name="P2",
        description="affine strongly monotone F over the line x1 + x2 = 2",
        set_C=_BOX,
        S=ProjectionConfig(set=Ball(center=(0.0, 0.0), radius=3.0)),
        V=ConstantConfig(value=(1.0, 0.0)),
        F=AffineSpdConfig(matrix=((1.0, 0.0), (0.0, 2.0))),
        family=ConstantResidualFamilyConfig(base=ProjectionConfig(set=_LINE)),
        constants=Constants(mu=0.25, rho=1.0, gamma=0.0, lip=2.0, eta=1.0),
        schedule=PowerScheduleConfig(s=0.7, t=1.4),
        stopping=_REGISTRY_STOP,
    ),
    "P3": ProblemConfig(
        name="P3",
        description="perturbed quarter-turn rotation about (0.5, 0.5)",
        set_C=_BOX,
        S=ProjectionConfig(set=Ball(center=(0.0, 0.0), radius=1.0)),
        V=LinearConfig(matrix=((0.1, 0.0), (0.0, 0.1))),
        F=IdentityConfig(dim=2),
        family=PerturbedFamilyConfig(
            base=RotationConfig(angle=math.pi / 2, center=(0.5, 0.5)),
            c=PowerSequence(coef=1.0, p=2.0),
        ),
        constants=Constants(mu=1.0, rho=1.0, gamma=0.1, lip=1.0, eta=1.0),
        schedule=PowerScheduleConfig(s=0.9, t=1.8),
        x1=(4.0, -2.0),
        stopping=_REGISTRY_STOP,
    ),
    "P4": ProblemConfig(
        name="P4",
        description="average of the projections onto the coordinate axes",
        set_C=_BOX,
        S=IdentityConfig(dim=2),
        V=ZeroConfig(dim=2),
        F=IdentityConfig(dim=2),
        family=ConstantResidualFamilyConfig(
            base=ComboConfig(
                weights=(0.5, 0.5),
                maps=[
                    ProjectionConfig(set=Hyperplane(a=(1.0, 0.0), b=0.0)),
                    ProjectionConfig(set=Hyperplane(a=(0.0, 1.0), b=0.0)),
                ],
            )
        ),
        constants=Constants(mu=1.0, rho=0.0, gamma=0.0, lip=1.0, eta=1.0),
        schedule=PowerScheduleConfig(s=0.9, t=1.8),
        x1=(3.0, -4.0),
        stopping=_REGISTRY_STOP,
        combo=ComboConfig(
            weights=(0.5, 0.5),
            maps=[
                ProjectionConfig(set=Hyperplane(a=(1.0, 0.0), b=0.0)),
                ProjectionConfig(set=Hyperplane(a=(0.0, 1.0), b=0.0)),
            ],
        ),
    ),
}


def get_problem_config(name: str) -> ProblemConfig:
    """Look up a registry problem by name.

    Raises:
        ConfigError: If the name is not registered
    """
    if name not in PROBLEM_REGISTRY:
        raise ConfigError(
            f"problem '{name}' not found in registry; known problems: "
            f"{sorted(PROBLEM_REGISTRY)}"
        )
    return PROBLEM_REGISTRY[name]


def _audit(prob: ProblemSpec, seed: int) -> None:
    box = prob.sampling_box
    if box is None:
        return
    reports = [
        audit_lipschitz(prob.V, box, AUDIT_PAIRS, seed),
        audit_lipschitz(prob.F, box, AUDIT_PAIRS, seed),
        audit_strong_monotonicity(prob.F, box, AUDIT_PAIRS, seed),
        audit_nonexpansive(prob.S, box, AUDIT_PAIRS, seed),
        audit_nonexpansive(prob.family.limit_map, box, AUDIT_PAIRS, seed),
    ]
    for report in reports:
        if not report.passed:
            logger.warning(
                "Declared constant failed its audit",
                extra={"problem": prob.name, **report.model_dump()},
            )


def build_problem(config: ProblemConfig, audit_seed: Optional[int] = None) -> ProblemSpec:
    """Assemble the operator values for config and validate the constants.

    With audit_seed set, the declared constants are audited on the sampling
    box and failures are logged, never raised.
    """
    box = config.resolved_sampling_box()
    prob = ProblemSpec(
        set_C=config.set_C,
        S=config.S.build(Role.NONEXPANSIVE),
        V=config.V.build(Role.LIPSCHITZ),
        F=config.F.build(Role.MONOTONE),
        family=config.family.build(box.diameter() if box is not None else None),
        constants=config.constants,
        sampling_box=box,
        name=config.name,
    )
    if audit_seed is not None:
        _audit(prob, audit_seed)
    return prob

