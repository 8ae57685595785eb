"""Operator value types: Lipschitz maps, strongly monotone operators,
nonexpansive maps and nearly nonexpansive families.

All of them wrap pure callables and are immutable, so one instance can be
shared between concurrent runs.
"""

from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from hierfp.core.interfaces import BaseConvexSet, UsageError
from hierfp.core.linalg import Vector

VectorFn = Callable[[Vector], Vector]
IndexedVectorFn = Callable[[int, Vector], Vector]
Sequence = Callable[[int], float]


class Role(str, Enum):
    """The slot an operator fills in the iteration."""

    LIPSCHITZ = "lipschitz"  # V
    MONOTONE = "monotone"  # F
    NONEXPANSIVE = "nonexpansive"  # S, T


@dataclass(frozen=True)
class LipschitzMap:
    """gamma-Lipschitz map V."""

    eval: VectorFn
    gamma: float
    name: str = "V"

    def __post_init__(self) -> None:
        if self.gamma < 0:
            raise UsageError(f"Lipschitz constant must be >= 0, got {self.gamma}")

    def __call__(self, x: Vector) -> Vector:
        return self.eval(x)


@dataclass(frozen=True)
class StronglyMonotoneOp:
    """L-Lipschitz, eta-strongly monotone operator F."""

    eval: VectorFn
    lip: float
    eta: float
    name: str = "F"

    def __post_init__(self) -> None:
        if self.lip <= 0 or self.eta <= 0:
            raise UsageError(
                f"F needs L > 0 and eta > 0, got L={self.lip}, eta={self.eta}"
            )
        if self.eta > self.lip:
            raise UsageError(f"eta={self.eta} cannot exceed L={self.lip}")

    def __call__(self, x: Vector) -> Vector:
        return self.eval(x)


@dataclass(frozen=True)
class NonexpansiveMap:
    """Nonexpansive map with an optional declared fixed-point set."""

    eval: VectorFn
    fixed_set_hint: Optional[BaseConvexSet] = None
    name: str = "T"

    def __call__(self, x: Vector) -> Vector:
        return self.eval(x)


@dataclass(frozen=True)
class NearlyNonexpansiveFamily:
    """Sequence T_n with ||T_n x - T_n y|| <= ||x - y|| + a_n, a_n -> 0.

    `limit_map` is the pointwise limit T and `common_fixed_set` the declared
    intersection of Fix(T_n), taken to equal Fix(T).
    """

    eval_n: IndexedVectorFn
    a_seq: Sequence
    limit_map: NonexpansiveMap
    common_fixed_set: Optional[BaseConvexSet]
    name: str = "T_n"
    constant: bool = False

    def __call__(self, n: int, x: Vector) -> Vector:
        return self.eval_n(n, x)
