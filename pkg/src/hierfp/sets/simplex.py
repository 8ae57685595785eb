"""Projection onto the probability simplex {x >= 0, sum x = 1}."""

from typing import Literal

import numpy as np
from pydantic import Field

from hierfp.core.interfaces import BaseConvexSet
from hierfp.core.linalg import Vector
from hierfp.sets.base import check_dim
from hierfp.sets.elementary import Box


def project_simplex(y: Vector) -> Vector:
    """Sort-and-threshold projection onto the unit simplex.

    Sort descending, find the largest k with u_k > (sum_{i<=k} u_i - 1) / k,
    and clamp y - theta at zero. Exact in finitely many operations.
    """
    u = np.sort(y)[::-1]
    cssv = np.cumsum(u) - 1.0
    ks = np.arange(1, y.shape[0] + 1)
    k = int(np.nonzero(u - cssv / ks > 0)[0][-1])
    theta = cssv[k] / (k + 1)
    return np.maximum(y - theta, 0.0)


class Simplex(BaseConvexSet):
    """The unit simplex in R^d."""

    kind: Literal["simplex"] = "simplex"
    dimension: int = Field(ge=1)

    @property
    def dim(self) -> int:
        return self.dimension

    @property
    def is_bounded(self) -> bool:
        return True

    def project(self, x: Vector) -> Vector:
        check_dim(self, x)
        return project_simplex(x)

    def contains(self, x: Vector, tol: float = 0.0) -> bool:
        check_dim(self, x)
        return bool(np.all(x >= -tol)) and abs(float(np.sum(x)) - 1.0) <= tol

    def bounding_box(self) -> Box:
        return Box(lo=(0.0,) * self.dimension, hi=(1.0,) * self.dimension)

    def diameter(self) -> float:
        return float(np.sqrt(2.0)) if self.dimension > 1 else 0.0
