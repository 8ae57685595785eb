"""Dense real vector arithmetic on R^d.

The Hilbert space of the theory is modelled as R^d with the standard inner
product. Every vector is a 1-D float64 ndarray; vectors stored inside models
are made read-only.
"""

from collections.abc import Iterable, Sequence
from typing import TypeAlias

import numpy as np
from numpy.typing import ArrayLike, NDArray

from hierfp.core.interfaces import UsageError

Vector: TypeAlias = NDArray[np.float64]


def as_vector(values: ArrayLike, dim: int | None = None) -> Vector:
    """Copy values into a read-only finite float64 vector."""
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise UsageError(f"expected a non-empty 1-D vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise UsageError("vector components must be finite")
    if dim is not None and arr.size != dim:
        raise UsageError(f"dimension mismatch: expected {dim}, got {arr.size}")
    arr.setflags(write=False)
    return arr


def ensure_same_dim(*vectors: Vector) -> int:
    """Return the shared dimension of the vectors or raise UsageError."""
    if not vectors:
        raise UsageError("at least one vector is required")
    dims = {v.shape[0] for v in vectors}
    if len(dims) != 1:
        raise UsageError(f"dimension mismatch: {sorted(dims)}")
    return dims.pop()


def inner(x: Vector, y: Vector) -> float:
    """Standard inner product sum_i x_i y_i."""
    if x.shape != y.shape:
        raise UsageError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return float(np.dot(x, y))


def norm(x: Vector) -> float:
    """Euclidean norm sqrt(<x, x>)."""
    return float(np.sqrt(np.dot(x, x)))


def dist(x: Vector, y: Vector) -> float:
    """Distance ||x - y||."""
    if x.shape != y.shape:
        raise UsageError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return norm(x - y)


def lincomb(coeffs: Sequence[float], vecs: Iterable[Vector]) -> Vector:
    """Componentwise linear combination sum_i c_i v_i."""
    vec_list = list(vecs)
    if len(coeffs) != len(vec_list):
        raise UsageError(
            f"length mismatch: {len(coeffs)} coefficients, {len(vec_list)} vectors"
        )
    if not vec_list:
        raise UsageError("lincomb needs at least one vector")
    ensure_same_dim(*vec_list)
    out = np.zeros_like(vec_list[0], dtype=np.float64)
    for c, v in zip(coeffs, vec_list):
        out += c * v
    return out
