"""Operator registry and `kind`-tagged operator configuration."""

from collections.abc import Callable
from importlib import import_module
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from hierfp.core.interfaces import UsageError
from hierfp.operators.families import constant_residual_family, perturbed_family
from hierfp.operators.maps import NearlyNonexpansiveFamily, NonexpansiveMap, Role
from hierfp.operators.sequences import SequenceSpec, ZeroSequence
from hierfp.sets import ConvexSetSpec


class BuilderConfig(BaseModel):
    """Configuration for one operator builder."""

    roles: frozenset[Role]
    function_name: str
    display_name: str


_ALL_ROLES = frozenset(Role)

OPERATOR_BUILDERS: dict[str, BuilderConfig] = {
    "affine_spd": BuilderConfig(
        roles=_ALL_ROLES, function_name="affine_spd", display_name="Affine SPD"
    ),
    "projection": BuilderConfig(
        roles=frozenset({Role.LIPSCHITZ, Role.NONEXPANSIVE}),
        function_name="projection_map",
        display_name="Metric projection",
    ),
    "rotation": BuilderConfig(
        roles=frozenset({Role.LIPSCHITZ, Role.NONEXPANSIVE}),
        function_name="rotation",
        display_name="Rotation",
    ),
    "identity": BuilderConfig(
        roles=_ALL_ROLES, function_name="identity_map", display_name="Identity"
    ),
    "constant": BuilderConfig(
        roles=frozenset({Role.LIPSCHITZ, Role.NONEXPANSIVE}),
        function_name="constant_map",
        display_name="Constant",
    ),
    "zero": BuilderConfig(
        roles=frozenset({Role.LIPSCHITZ, Role.NONEXPANSIVE}),
        function_name="zero_map",
        display_name="Zero",
    ),
    "linear": BuilderConfig(
        roles=frozenset({Role.LIPSCHITZ, Role.NONEXPANSIVE}),
        function_name="linear_map",
        display_name="Linear",
    ),
    "combo": BuilderConfig(
        roles=frozenset({Role.NONEXPANSIVE}),
        function_name="convex_combination",
        display_name="Convex combination",
    ),
}


def get_builder(kind: str, role: Optional[Role] = None) -> Callable[..., Any]:
    """Look up an operator builder by kind.

    Args:
        kind: Operator kind (key in OPERATOR_BUILDERS)
        role: Slot the operator will fill; checked against the builder's roles

    Returns:
        The builder function from the operator library

    Raises:
        UsageError: If the kind is unknown or cannot fill the role
    """
    if kind not in OPERATOR_BUILDERS:
        raise UsageError(
            f"operator kind '{kind}' not found in registry; "
            f"known kinds: {sorted(OPERATOR_BUILDERS)}"
        )
    config = OPERATOR_BUILDERS[kind]
    if role is not None and role not in config.roles:
        raise UsageError(
            f"{config.display_name} cannot serve as a {role.value} operator"
        )
    try:
        module = import_module("hierfp.operators.library")
        return getattr(module, config.function_name)  # type: ignore[no-any-return]
    except (ImportError, AttributeError) as e:
        raise UsageError(
            f"failed to load builder {config.function_name} for '{kind}': {e}"
        ) from e


class _OperatorConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)


class AffineSpdConfig(_OperatorConfig):
    kind: Literal["affine_spd"] = "affine_spd"
    matrix: tuple[tuple[float, ...], ...]
    offset: Optional[tuple[float, ...]] = None

    def build(self, role: Role) -> Any:
        return get_builder(self.kind, role)(self.matrix, self.offset, role=role)


class ProjectionConfig(_OperatorConfig):
    kind: Literal["projection"] = "projection"
    set: ConvexSetSpec

    def build(self, role: Role) -> Any:
        return get_builder(self.kind, role)(self.set, role=role)


class RotationConfig(_OperatorConfig):
    """Rotation by `angle` radians about `center` in the coordinate `plane`."""

    kind: Literal["rotation"] = "rotation"
    angle: float
    center: tuple[float, ...] = Field(min_length=2)
    plane: tuple[int, int] = (0, 1)

    def build(self, role: Role) -> Any:
        return get_builder(self.kind, role)(
            self.angle, self.center, self.plane, role=role
        )


class IdentityConfig(_OperatorConfig):
    kind: Literal["identity"] = "identity"
    dim: int = Field(ge=1)

    def build(self, role: Role) -> Any:
        return get_builder(self.kind, role)(self.dim, role=role)


class ConstantConfig(_OperatorConfig):
    kind: Literal["constant"] = "constant"
    value: tuple[float, ...] = Field(min_length=1)

    def build(self, role: Role) -> Any:
        return get_builder(self.kind, role)(self.value, role=role)


class ZeroConfig(_OperatorConfig):
    kind: Literal["zero"] = "zero"
    dim: int = Field(ge=1)

    def build(self, role: Role) -> Any:
        return get_builder(self.kind, role)(self.dim, role=role)


class LinearConfig(_OperatorConfig):
    kind: Literal["linear"] = "linear"
    matrix: tuple[tuple[float, ...], ...]

    def build(self, role: Role) -> Any:
        return get_builder(self.kind, role)(self.matrix, role=role)


class ComboConfig(_OperatorConfig):
    """Convex combination of nonexpansive members."""

    kind: Literal["combo"] = "combo"
    weights: tuple[float, ...] = Field(min_length=1)
    maps: list["OperatorSpec"] = Field(min_length=1)

    def members(self) -> list[NonexpansiveMap]:
        return [m.build(Role.NONEXPANSIVE) for m in self.maps]

    def build(self, role: Role) -> Any:
        return get_builder(self.kind, role)(self.weights, self.members())


OperatorSpec = Annotated[
    Union[
        AffineSpdConfig,
        ProjectionConfig,
        RotationConfig,
        IdentityConfig,
        ConstantConfig,
        ZeroConfig,
        LinearConfig,
        ComboConfig,
    ],
    Field(discriminator="kind"),
]

ComboConfig.model_rebuild()


class ConstantResidualFamilyConfig(_OperatorConfig):
    """T_n = T with a declared residual sequence a_n."""

    kind: Literal["constant_residual"] = "constant_residual"
    base: OperatorSpec
    a: SequenceSpec = Field(default_factory=ZeroSequence)

    def build(self, region_diameter: Optional[float] = None) -> NearlyNonexpansiveFamily:
        return constant_residual_family(self.base.build(Role.NONEXPANSIVE), self.a.build())


class PerturbedFamilyConfig(_OperatorConfig):
    """T_n(x) = T(x) + c_n (x - p); `diameter` defaults to the sampling box's."""

    kind: Literal["perturbed"] = "perturbed"
    base: OperatorSpec
    c: SequenceSpec
    diameter: Optional[float] = Field(default=None, gt=0)

    def build(self, region_diameter: Optional[float] = None) -> NearlyNonexpansiveFamily:
        diameter = self.diameter if self.diameter is not None else region_diameter
        if diameter is None:
            raise UsageError("perturbed family needs a diameter or a sampling box")
        return perturbed_family(
            self.base.build(Role.NONEXPANSIVE), self.c.build(), diameter
        )


FamilySpec = Annotated[
    Union[ConstantResidualFamilyConfig, PerturbedFamilyConfig],
    Field(discriminator="kind"),
]
