"""Closed convex sets with exact metric projections."""

from pydantic import TypeAdapter

from hierfp.core.interfaces import BaseConvexSet
from hierfp.sets.base import contains, project
from hierfp.sets.elementary import (
    AffineSubspace,
    Ball,
    Box,
    Halfspace,
    Hyperplane,
    WholeSpace,
)
from hierfp.sets.intersection import ConvexSetSpec, Intersection, dykstra
from hierfp.sets.simplex import Simplex, project_simplex

CONVEX_SET_ADAPTER: TypeAdapter[ConvexSetSpec] = TypeAdapter(ConvexSetSpec)


def parse_set(data: object) -> BaseConvexSet:
    """Build a convex set from its `kind`-tagged mapping."""
    return CONVEX_SET_ADAPTER.validate_python(data)


__all__ = [
    "AffineSubspace",
    "Ball",
    "BaseConvexSet",
    "Box",
    "CONVEX_SET_ADAPTER",
    "ConvexSetSpec",
    "Halfspace",
    "Hyperplane",
    "Intersection",
    "Simplex",
    "WholeSpace",
    "contains",
    "dykstra",
    "parse_set",
    "project",
    "project_simplex",
]
