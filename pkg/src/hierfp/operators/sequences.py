"""Nonnegative real sequences indexed from n = 1 (a_n, c_n, ...)."""

from collections.abc import Callable
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field

from hierfp.core.interfaces import UsageError


class _SequenceConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)


class PowerSequence(_SequenceConfig):
    """coef * n^(-p)."""

    kind: Literal["power"] = "power"
    coef: float = Field(default=1.0, ge=0)
    p: float = Field(gt=0)

    def build(self) -> Callable[[int], float]:
        return power_sequence(self.coef, self.p)


class ZeroSequence(_SequenceConfig):
    """Identically zero."""

    kind: Literal["zero"] = "zero"

    def build(self) -> Callable[[int], float]:
        return zero_sequence


class TableSequence(_SequenceConfig):
    """Explicit values for n = 1..len; later indices hold the last value."""

    kind: Literal["table"] = "table"
    values: tuple[Annotated[float, Field(ge=0)], ...] = Field(min_length=1)

    def build(self) -> Callable[[int], float]:
        return table_sequence(self.values)


SequenceSpec = Annotated[
    Union[PowerSequence, ZeroSequence, TableSequence], Field(discriminator="kind")
]


def power_sequence(coef: float, p: float) -> Callable[[int], float]:
    def value(n: int) -> float:
        return coef * float(n) ** (-p)

    return value


def zero_sequence(n: int) -> float:
    return 0.0


def table_sequence(values: tuple[float, ...]) -> Callable[[int], float]:
    if not values:
        raise UsageError("a table sequence needs at least one value")
    frozen = tuple(float(v) for v in values)

    def value(n: int) -> float:
        if n < 1:
            raise UsageError(f"sequence index starts at 1, got {n}")
        return frozen[min(n, len(frozen)) - 1]

    return value
