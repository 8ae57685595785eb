"""Elementary closed convex sets with closed-form projections."""

from typing import Literal

import numpy as np
from pydantic import Field, field_validator, model_validator

from hierfp.core.interfaces import BaseConvexSet
from hierfp.core.linalg import Vector
from hierfp.sets.base import as_array, check_dim

ORTHONORMAL_TOL = 1e-10


class Box(BaseConvexSet):
    """Axis-aligned box {x : lo <= x <= hi}."""

    kind: Literal["box"] = "box"
    lo: tuple[float, ...] = Field(min_length=1)
    hi: tuple[float, ...] = Field(min_length=1)

    @model_validator(mode="after")
    def ordered_bounds(self) -> "Box":
        if len(self.lo) != len(self.hi):
            raise ValueError("lo and hi must have the same dimension")
        if any(lo > hi for lo, hi in zip(self.lo, self.hi)):
            raise ValueError("Box requires lo <= hi componentwise")
        return self

    @classmethod
    def cube(cls, half_width: float, dim: int) -> "Box":
        return cls(lo=(-half_width,) * dim, hi=(half_width,) * dim)

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def is_bounded(self) -> bool:
        return True

    def project(self, x: Vector) -> Vector:
        check_dim(self, x)
        return np.clip(x, as_array(self.lo), as_array(self.hi))

    def contains(self, x: Vector, tol: float = 0.0) -> bool:
        check_dim(self, x)
        return bool(
            np.all(x >= as_array(self.lo) - tol) and np.all(x <= as_array(self.hi) + tol)
        )

    def bounding_box(self) -> "Box":
        return self

    def diameter(self) -> float:
        return float(np.linalg.norm(as_array(self.hi) - as_array(self.lo)))

    def sample(self, rng: np.random.Generator, count: int) -> Vector:
        return rng.uniform(as_array(self.lo), as_array(self.hi), size=(count, self.dim))


class Ball(BaseConvexSet):
    """Closed Euclidean ball of the given center and radius."""

    kind: Literal["ball"] = "ball"
    center: tuple[float, ...] = Field(min_length=1)
    radius: float = Field(gt=0)

    @property
    def dim(self) -> int:
        return len(self.center)

    @property
    def is_bounded(self) -> bool:
        return True

    def project(self, x: Vector) -> Vector:
        check_dim(self, x)
        c = as_array(self.center)
        d = x - c
        n = float(np.sqrt(np.dot(d, d)))
        if n <= self.radius:
            return x.copy()
        return c + (self.radius / n) * d

    def contains(self, x: Vector, tol: float = 0.0) -> bool:
        check_dim(self, x)
        return float(np.linalg.norm(x - as_array(self.center))) <= self.radius + tol

    def bounding_box(self) -> Box:
        return Box(
            lo=tuple(c - self.radius for c in self.center),
            hi=tuple(c + self.radius for c in self.center),
        )

    def diameter(self) -> float:
        return 2.0 * self.radius

    def sample(self, rng: np.random.Generator, count: int) -> Vector:
        directions = rng.standard_normal((count, self.dim))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        radii = self.radius * rng.random(count) ** (1.0 / self.dim)
        return as_array(self.center) + radii[:, None] * directions


class _NormalVectorSet(BaseConvexSet):
    a: tuple[float, ...] = Field(min_length=1)
    b: float

    @field_validator("a")
    @classmethod
    def nonzero_normal(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if not any(component != 0.0 for component in value):
            raise ValueError("normal vector a must be nonzero")
        return value

    @property
    def dim(self) -> int:
        return len(self.a)

    def _violation(self, x: Vector) -> float:
        return float(np.dot(as_array(self.a), x)) - self.b


class Halfspace(_NormalVectorSet):
    """Closed halfspace {x : <a, x> <= b}."""

    kind: Literal["halfspace"] = "halfspace"

    def project(self, x: Vector) -> Vector:
        check_dim(self, x)
        a = as_array(self.a)
        excess = self._violation(x)
        if excess <= 0.0:
            return x.copy()
        return x - (excess / float(np.dot(a, a))) * a

    def contains(self, x: Vector, tol: float = 0.0) -> bool:
        check_dim(self, x)
        return self._violation(x) <= tol


class Hyperplane(_NormalVectorSet):
    """Hyperplane {x : <a, x> = b}."""

    kind: Literal["hyperplane"] = "hyperplane"

    def project(self, x: Vector) -> Vector:
        check_dim(self, x)
        a = as_array(self.a)
        return x - (self._violation(x) / float(np.dot(a, a))) * a

    def contains(self, x: Vector, tol: float = 0.0) -> bool:
        check_dim(self, x)
        return abs(self._violation(x)) <= tol


class AffineSubspace(BaseConvexSet):
    """offset + span(basis) for an orthonormal basis; an empty basis is a point."""

    kind: Literal["affine"] = "affine"
    offset: tuple[float, ...] = Field(min_length=1)
    basis: tuple[tuple[float, ...], ...] = ()

    @model_validator(mode="after")
    def orthonormal_basis(self) -> "AffineSubspace":
        if any(len(v) != len(self.offset) for v in self.basis):
            raise ValueError("basis vectors must match the offset dimension")
        if self.basis:
            gram = np.array(self.basis) @ np.array(self.basis).T
            if not np.allclose(gram, np.eye(len(self.basis)), rtol=0, atol=ORTHONORMAL_TOL):
                raise ValueError("AffineSubspace basis must be orthonormal")
        return self

    @classmethod
    def point(cls, p: tuple[float, ...]) -> "AffineSubspace":
        return cls(offset=tuple(float(v) for v in p))

    @property
    def dim(self) -> int:
        return len(self.offset)

    @property
    def is_bounded(self) -> bool:
        return not self.basis

    def project(self, x: Vector) -> Vector:
        check_dim(self, x)
        offset = as_array(self.offset)
        if not self.basis:
            return offset.copy()
        basis = np.array(self.basis)
        return offset + basis.T @ (basis @ (x - offset))

    def contains(self, x: Vector, tol: float = 0.0) -> bool:
        return float(np.linalg.norm(x - self.project(x))) <= tol

    def bounding_box(self) -> Box | None:
        if self.basis:
            return None
        return Box(lo=self.offset, hi=self.offset)

    def diameter(self) -> float:
        if self.basis:
            return super().diameter()
        return 0.0


class WholeSpace(BaseConvexSet):
    """The whole of R^d."""

    kind: Literal["whole"] = "whole"
    dimension: int = Field(ge=1)

    @property
    def dim(self) -> int:
        return self.dimension

    def project(self, x: Vector) -> Vector:
        check_dim(self, x)
        return x.copy()

    def contains(self, x: Vector, tol: float = 0.0) -> bool:
        check_dim(self, x)
        return True

