"""Desk-scale residuals of the variational inequality and the hierarchical problem.

Both residuals are evaluated over points of the fixed-point set, drawn
uniformly from a bounding box and projected onto the set. The result is a
certificate on those samples, not a proof.
"""

from collections.abc import Callable
from typing import Optional

import numpy as np

from hierfp.core.interfaces import BaseConvexSet, UsageError
from hierfp.core.linalg import Vector, as_vector
from hierfp.sets import Box
from hierfp.solver.engine import ProblemSpec

DEFAULT_SAMPLES = 1000


def sample_set(
    fset: BaseConvexSet, samples: int, seed: int, box: Optional[Box] = None
) -> np.ndarray:
    """Uniform draws in box (or fset's own bounding box), projected onto fset."""
    if samples < 1:
        raise UsageError(f"samples must be >= 1, got {samples}")
    region = box if box is not None else fset.bounding_box()
    if region is None:
        raise UsageError(
            f"cannot sample an unbounded {type(fset).__name__} without a bounding box"
        )
    draws = region.sample(np.random.default_rng(seed), samples)
    return np.array([fset.project(z) for z in draws])


def sample_fixed_set(
    prob: ProblemSpec, samples: int, seed: int, box: Optional[Box] = None
) -> np.ndarray:
    """Points of the common fixed-point set, shape (samples, dim)."""
    return sample_set(prob.fixed_set, samples, seed, box or prob.sampling_box)


def _direction(prob: ProblemSpec, x: Vector) -> Vector:
    """(rho V - mu F) x."""
    c = prob.constants
    return c.rho * prob.V(x) - c.mu * prob.F(x)


def vi_residual(
    x: Vector,
    prob: ProblemSpec,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    points: Optional[np.ndarray] = None,
) -> float:
    """max over sampled z in the fixed-point set of <(rho V - mu F) x, z - x>.

    At the solution this is <= 0 up to rounding; positive values quantify the
    violation. Pass `points` to reuse a sample.
    """
    x = as_vector(x, dim=prob.dim)
    zs = sample_fixed_set(prob, samples, seed) if points is None else points
    return float(np.max((zs - x) @ _direction(prob, x)))


def make_vi_residual(
    prob: ProblemSpec, samples: int = DEFAULT_SAMPLES, seed: int = 0
) -> Callable[[Vector], float]:
    """vi_residual with the sample drawn once, for per-row use during a run."""
    points = sample_fixed_set(prob, samples, seed)

    def residual(x: Vector) -> float:
        return float(np.max((points - x) @ _direction(prob, x)))

    return residual


def hierarchical_residual(
    x: Vector,
    S: Callable[[Vector], Vector],
    fset: BaseConvexSet,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    box: Optional[Box] = None,
) -> float:
    """min over sampled z in fset of <x - S x, z - x>; >= -tol at a solution."""
    x = as_vector(x)
    zs = sample_set(fset, samples, seed, box)
    return float(np.min((zs - x) @ (x - S(x))))
