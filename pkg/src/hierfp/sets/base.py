"""Base convex set class and module-level projection helpers."""

from functools import lru_cache

import numpy as np

from hierfp.core.interfaces import BaseConvexSet, UsageError
from hierfp.core.linalg import Vector


@lru_cache(maxsize=1024)
def as_array(values: tuple[float, ...]) -> Vector:
    """Read-only ndarray view of a tuple field, cached per tuple."""
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


def check_dim(convex_set: BaseConvexSet, x: Vector) -> None:
    if x.shape != (convex_set.dim,):
        raise UsageError(
            f"dimension mismatch: {type(convex_set).__name__} lives in "
            f"R^{convex_set.dim}, got shape {x.shape}"
        )


def project(convex_set: BaseConvexSet, x: Vector) -> Vector:
    """Metric projection of x onto the set."""
    return convex_set.project(np.asarray(x, dtype=np.float64))


def contains(convex_set: BaseConvexSet, x: Vector, tol: float = 0.0) -> bool:
    """Membership test with constraint-violation tolerance tol."""
    if tol < 0:
        raise UsageError(f"tol must be nonnegative, got {tol}")
    return convex_set.contains(np.asarray(x, dtype=np.float64), tol)
