"""Concrete operator library.

Each builder takes the role the operator will play (V, F, or S/T) and
returns the matching value type with exact declared constants.
"""

import math
from collections.abc import Sequence
from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike

from hierfp.core.interfaces import BaseConvexSet, UsageError
from hierfp.core.linalg import Vector, as_vector
from hierfp.operators.constants import compute_nu
from hierfp.operators.maps import (
    LipschitzMap,
    NonexpansiveMap,
    Role,
    StronglyMonotoneOp,
    VectorFn,
)
from hierfp.sets import AffineSubspace, Intersection, WholeSpace

SYMMETRY_TOL = 1e-12
WEIGHT_SUM_TOL = 1e-12

AnyMap = Union[LipschitzMap, StronglyMonotoneOp, NonexpansiveMap]


def _for_role(
    role: Role,
    ev: VectorFn,
    name: str,
    *,
    lip: float,
    eta: Optional[float] = None,
    fixed_set: Optional[BaseConvexSet] = None,
    nonexpansive: bool = False,
) -> AnyMap:
    if role is Role.LIPSCHITZ:
        return LipschitzMap(ev, gamma=lip, name=name)
    if role is Role.MONOTONE:
        if eta is None:
            raise UsageError(f"{name} is not strongly monotone and cannot serve as F")
        return StronglyMonotoneOp(ev, lip=lip, eta=eta, name=name)
    if not nonexpansive:
        raise UsageError(f"{name} is not nonexpansive and cannot serve as S or T")
    return NonexpansiveMap(ev, fixed_set_hint=fixed_set, name=name)


def affine_spd(
    matrix: ArrayLike, offset: Optional[ArrayLike] = None, role: Role = Role.MONOTONE
) -> AnyMap:
    """F(x) = A x + b with A symmetric positive definite.

    eta is the smallest eigenvalue of A and L the largest, so both constants
    are exact.
    """
    a = np.array(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise UsageError(f"affine_spd needs a square matrix, got shape {a.shape}")
    if not np.allclose(a, a.T, rtol=0, atol=SYMMETRY_TOL):
        raise UsageError("affine_spd needs a symmetric matrix")
    eigenvalues = np.linalg.eigvalsh(a)
    if eigenvalues[0] <= 0:
        raise UsageError(
            f"affine_spd needs a positive definite matrix, min eigenvalue {eigenvalues[0]:g}"
        )
    b = (
        np.zeros(a.shape[0])
        if offset is None
        else np.array(as_vector(offset, dim=a.shape[0]))
    )
    a.setflags(write=False)
    b.setflags(write=False)

    def ev(x: Vector) -> Vector:
        return a @ x + b

    return _for_role(
        role, ev, "affine_spd", lip=float(eigenvalues[-1]), eta=float(eigenvalues[0])
    )


def linear_map(matrix: ArrayLike, role: Role = Role.LIPSCHITZ) -> AnyMap:
    """x -> A x with gamma the spectral norm of A."""
    a = np.array(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise UsageError(f"linear map needs a square matrix, got shape {a.shape}")
    a.setflags(write=False)
    gamma = float(np.linalg.norm(a, 2))

    def ev(x: Vector) -> Vector:
        return a @ x

    fixed_set: Optional[BaseConvexSet] = None
    if role is Role.NONEXPANSIVE:
        # Fix(A) = null(A - I), read off the SVD.
        _, s, vt = np.linalg.svd(a - np.eye(a.shape[0]))
        null_basis = vt[s <= 1e-12]
        fixed_set = AffineSubspace(
            offset=(0.0,) * a.shape[0],
            basis=tuple(tuple(float(c) for c in row) for row in null_basis),
        )
    return _for_role(
        role,
        ev,
        "linear",
        lip=gamma,
        fixed_set=fixed_set,
        nonexpansive=gamma <= 1.0 + 1e-12,
    )


def identity_map(dim: int, role: Role = Role.NONEXPANSIVE) -> AnyMap:
    def ev(x: Vector) -> Vector:
        return x

    return _for_role(
        role,
        ev,
        "identity",
        lip=1.0,
        eta=1.0,
        fixed_set=WholeSpace(dimension=dim),
        nonexpansive=True,
    )


def projection_map(convex_set: BaseConvexSet, role: Role = Role.NONEXPANSIVE) -> AnyMap:
    """P_C; its fixed-point set is C itself."""
    return _for_role(
        role,
        convex_set.project,
        f"P_{getattr(convex_set, 'kind', 'C')}",
        lip=1.0,
        fixed_set=convex_set,
        nonexpansive=True,
    )


def rotation(
    angle: float,
    center: ArrayLike,
    plane: tuple[int, int] = (0, 1),
    role: Role = Role.NONEXPANSIVE,
) -> AnyMap:
    """Rotation by angle (radians) about center in the given coordinate plane."""
    c = as_vector(center)
    dim = c.shape[0]
    i, j = plane
    if dim < 2 or i == j or not (0 <= i < dim and 0 <= j < dim):
        raise UsageError(f"invalid rotation plane {plane} in R^{dim}")
    r = np.eye(dim)
    cos, sin = math.cos(angle), math.sin(angle)
    r[i, i], r[i, j], r[j, i], r[j, j] = cos, -sin, sin, cos
    r.setflags(write=False)

    def ev(x: Vector) -> Vector:
        return c + r @ (x - c)

    fixed_set: BaseConvexSet
    if math.isclose(math.remainder(angle, 2 * math.pi), 0.0, abs_tol=1e-15):
        fixed_set = WholeSpace(dimension=dim)
    else:
        others = [k for k in range(dim) if k not in plane]
        fixed_set = AffineSubspace(
            offset=tuple(float(v) for v in c),
            basis=tuple(
                tuple(1.0 if m == k else 0.0 for m in range(dim)) for k in others
            ),
        )
    return _for_role(
        role, ev, "rotation", lip=1.0, fixed_set=fixed_set, nonexpansive=True
    )


def constant_map(value: ArrayLike, role: Role = Role.LIPSCHITZ) -> AnyMap:
    """x -> value (gamma = 0); as a nonexpansive map its only fixed point is value."""
    v = as_vector(value)

    def ev(x: Vector) -> Vector:
        return v

    return _for_role(
        role,
        ev,
        "constant",
        lip=0.0,
        fixed_set=AffineSubspace.point(tuple(v)),
        nonexpansive=True,
    )


def zero_map(dim: int, role: Role = Role.LIPSCHITZ) -> AnyMap:
    return constant_map(np.zeros(dim), role)


def convex_combination(
    weights: Sequence[float], maps: Sequence[NonexpansiveMap]
) -> NonexpansiveMap:
    """x -> sum_i lambda_i T_i(x) for positive weights summing to one."""
    if not maps or len(weights) != len(maps):
        raise UsageError(
            f"convex_combination needs one weight per map, got {len(weights)} "
            f"weights and {len(maps)} maps"
        )
    if any(w <= 0 for w in weights):
        raise UsageError("convex_combination weights must be positive")
    if abs(math.fsum(weights) - 1.0) > WEIGHT_SUM_TOL:
        raise UsageError(
            f"convex_combination weights must sum to 1, got {math.fsum(weights)!r}"
        )
    hints = [m.fixed_set_hint for m in maps]
    if len({h.dim for h in hints if h is not None}) > 1:
        raise UsageError("convex_combination members live in different dimensions")
    members = tuple(maps)
    lambdas = tuple(float(w) for w in weights)

    def ev(x: Vector) -> Vector:
        out = lambdas[0] * members[0](x)
        for lam, member in zip(lambdas[1:], members[1:]):
            out = out + lam * member(x)
        return out

    fixed_set: Optional[BaseConvexSet] = None
    if all(h is not None for h in hints):
        fixed_set = (
            hints[0] if len(hints) == 1 else Intersection(members=list(hints))  # type: ignore[arg-type]
        )
    return NonexpansiveMap(ev, fixed_set_hint=fixed_set, name="combo")


def combined_operator(
    v: LipschitzMap, f: StronglyMonotoneOp, mu: float, rho: float
) -> StronglyMonotoneOp:
    """A = mu F - rho V, strongly monotone with modulus mu eta - rho gamma."""
    eta = mu * f.eta - rho * v.gamma
    if eta <= 0:
        raise UsageError(
            f"mu F - rho V needs rho gamma < mu eta, got mu eta={mu * f.eta:g}, "
            f"rho gamma={rho * v.gamma:g}"
        )

    def ev(x: Vector) -> Vector:
        return mu * f(x) - rho * v(x)

    return StronglyMonotoneOp(
        ev, lip=mu * f.lip + abs(rho) * v.gamma, eta=eta, name="muF-rhoV"
    )


def contraction_map(f: StronglyMonotoneOp, lam: float, mu: float) -> LipschitzMap:
    """G = I - lam mu F, a contraction with factor 1 - lam nu."""
    if not 0 < lam < 1:
        raise UsageError(f"lam must lie in (0, 1), got {lam}")
    nu = compute_nu(mu, f.eta, f.lip)

    def ev(x: Vector) -> Vector:
        return x - lam * mu * f(x)

    return LipschitzMap(ev, gamma=1.0 - lam * nu, name="I-lam*mu*F")


def hierarchical_map(
    v: LipschitzMap, f: StronglyMonotoneOp, mu: float, rho: float
) -> LipschitzMap:
    """S = I - (mu F - rho V), so that x - Sx = (mu F - rho V) x.

    With this sign <x* - Sx*, z - x*> >= 0 on the fixed-point set is exactly
    the variational inequality <(rho V - mu F) x*, z - x*> <= 0.
    """

    def ev(x: Vector) -> Vector:
        return x - (mu * f(x) - rho * v(x))

    return LipschitzMap(
        ev, gamma=1.0 + mu * f.lip + abs(rho) * v.gamma, name="I-(muF-rhoV)"
    )
