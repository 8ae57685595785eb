"""Intersections of convex sets, projected with Dykstra's algorithm."""

from collections.abc import Sequence
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import Field, model_validator

from hierfp.core.interfaces import BaseConvexSet, ProjectionNotConvergedError
from hierfp.core.linalg import Vector
from hierfp.logging_config import get_logger
from hierfp.sets.base import check_dim
from hierfp.sets.elementary import (
    AffineSubspace,
    Ball,
    Box,
    Halfspace,
    Hyperplane,
    WholeSpace,
)
from hierfp.sets.simplex import Simplex

logger = get_logger(__name__)

DYKSTRA_TOL = 1e-10
DYKSTRA_MAX_SWEEPS = 10_000


def dykstra(
    sets: Sequence[BaseConvexSet],
    x: Vector,
    tol: float = DYKSTRA_TOL,
    max_sweeps: int = DYKSTRA_MAX_SWEEPS,
) -> tuple[Vector, int]:
    """Project x onto the intersection of sets.

    Each set keeps a correction increment, so the limit is the metric
    projection and not merely a feasible point. Stops when a full sweep
    moves the iterate by less than tol.
    """
    current = np.array(x, dtype=np.float64)
    increments = [np.zeros_like(current) for _ in sets]
    change = float("inf")
    for sweep in range(1, max_sweeps + 1):
        previous = current
        for i, member in enumerate(sets):
            shifted = current + increments[i]
            current = member.project(shifted)
            increments[i] = shifted - current
        change = float(np.linalg.norm(current - previous))
        if change < tol:
            return current, sweep
    logger.warning(
        "Dykstra projection hit its sweep cap",
        extra={"sweeps": max_sweeps, "last_change": change},
    )
    raise ProjectionNotConvergedError(max_sweeps, change)


class Intersection(BaseConvexSet):
    """Intersection of a nonempty list of convex sets of one dimension."""

    kind: Literal["intersection"] = "intersection"
    members: list["ConvexSetSpec"] = Field(min_length=1)
    tol: float = Field(default=DYKSTRA_TOL, gt=0)
    max_sweeps: int = Field(default=DYKSTRA_MAX_SWEEPS, ge=1)

    @model_validator(mode="after")
    def shared_dimension(self) -> "Intersection":
        if len({member.dim for member in self.members}) != 1:
            raise ValueError("Intersection members must share one dimension")
        return self

    @property
    def dim(self) -> int:
        return self.members[0].dim

    @property
    def is_bounded(self) -> bool:
        return any(member.is_bounded for member in self.members)

    def project(self, x: Vector) -> Vector:
        check_dim(self, x)
        if len(self.members) == 1:
            return self.members[0].project(x)
        result, _ = dykstra(self.members, x, self.tol, self.max_sweeps)
        return result

    def contains(self, x: Vector, tol: float = 0.0) -> bool:
        return all(member.contains(x, tol) for member in self.members)

    def bounding_box(self) -> Box | None:
        boxes = [b for b in (m.bounding_box() for m in self.members) if b is not None]
        if not boxes:
            return None
        lo = np.max([b.lo for b in boxes], axis=0)  # type: ignore[attr-defined]
        hi = np.min([b.hi for b in boxes], axis=0)  # type: ignore[attr-defined]
        return Box(lo=tuple(lo), hi=tuple(np.maximum(lo, hi)))

    def diameter(self) -> float:
        box = self.bounding_box()
        if box is None:
            return super().diameter()
        return box.diameter()


ConvexSetSpec = Annotated[
    Union[
        Box,
        Ball,
        Halfspace,
        Hyperplane,
        AffineSubspace,
        Simplex,
        WholeSpace,
        Intersection,
    ],
    Field(discriminator="kind"),
]

Intersection.model_rebuild()
