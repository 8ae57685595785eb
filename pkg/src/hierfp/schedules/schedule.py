"""Step-size schedules alpha_n, beta_n and their config models."""

from collections.abc import Callable
from dataclasses import dataclass, field, replace
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from hierfp.core.interfaces import UsageError
from hierfp.operators.sequences import table_sequence, zero_sequence

PREFIX_CHECK = 1000

SUM_ALPHA = "Σαₙ=∞"
ALPHA_LIMIT = "αₙ→0"
BETA_RATIO = "βₙ/αₙ→0"


@dataclass(frozen=True)
class Schedule:
    """The parameter sequences alpha_n and beta_n, indexed from n = 1.

    `length` is set for finite tables; indices past it hold the last value.
    """

    alpha: Callable[[int], float]
    beta: Callable[[int], float]
    descriptor: dict[str, Any] = field(default_factory=dict)
    length: Optional[int] = None

    def __post_init__(self) -> None:
        limit = PREFIX_CHECK if self.length is None else min(self.length, PREFIX_CHECK)
        for n in range(1, limit + 1):
            a, b = self.alpha(n), self.beta(n)
            if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
                raise UsageError(
                    f"schedule values must lie in [0, 1]: alpha_{n}={a!r}, beta_{n}={b!r}"
                )

    @property
    def kind(self) -> str:
        return str(self.descriptor.get("kind", "custom"))

    def with_beta_zero(self) -> "Schedule":
        """Same alpha, beta identically zero."""
        return replace(
            self, beta=zero_sequence, descriptor={**self.descriptor, "beta": "zero"}
        )


def power_schedule(s: float, t: float, strict: bool = True) -> Schedule:
    """alpha_n = n^-s, beta_n = n^-t.

    With strict=True the exponents must satisfy 0 < s <= 1 and t > s.
    strict=False only requires positive exponents and leaves the verdicts to
    validate_schedule.
    """
    if s <= 0 or t <= 0:
        raise UsageError(
            f"{ALPHA_LIMIT} violated: power exponents must be positive, got s={s}, t={t}"
        )
    if strict:
        if s > 1:
            raise UsageError(f"{SUM_ALPHA} violated: s={s} > 1 gives a convergent series")
        if t <= s:
            raise UsageError(f"{BETA_RATIO} violated: need t > s, got s={s}, t={t}")

    def alpha(n: int) -> float:
        return float(n) ** (-s)

    def beta(n: int) -> float:
        return float(n) ** (-t)

    return Schedule(alpha, beta, descriptor={"kind": "power", "s": s, "t": t})


def table_schedule(alpha: list[float], beta: list[float]) -> Schedule:
    """Finite tables for n = 1..len; both tables must have the same length."""
    if not alpha or len(alpha) != len(beta):
        raise UsageError(
            f"table schedule needs equal nonempty tables, got {len(alpha)} alpha "
            f"and {len(beta)} beta values"
        )
    return Schedule(
        table_sequence(tuple(alpha)),
        table_sequence(tuple(beta)),
        descriptor={"kind": "table", "length": len(alpha)},
        length=len(alpha),
    )


class _ScheduleConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)


class PowerScheduleConfig(_ScheduleConfig):
    kind: Literal["power"] = "power"
    s: float
    t: float

    @model_validator(mode="after")
    def admissible_exponents(self) -> "PowerScheduleConfig":
        power_schedule(self.s, self.t)
        return self

    def build(self) -> Schedule:
        return power_schedule(self.s, self.t)


class TableScheduleConfig(_ScheduleConfig):
    kind: Literal["table"] = "table"
    alpha: list[Annotated[float, Field(ge=0, le=1)]] = Field(min_length=1)
    beta: list[Annotated[float, Field(ge=0, le=1)]] = Field(min_length=1)

    @model_validator(mode="after")
    def equal_lengths(self) -> "TableScheduleConfig":
        if len(self.alpha) != len(self.beta):
            raise ValueError("alpha and beta tables must have the same length")
        return self

    def build(self) -> Schedule:
        return table_schedule(self.alpha, self.beta)


ScheduleSpec = Annotated[
    Union[PowerScheduleConfig, TableScheduleConfig], Field(discriminator="kind")
]
