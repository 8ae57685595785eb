"""Nearly nonexpansive families and their deviation estimates."""

from collections.abc import Callable, Iterable

import numpy as np

from hierfp.core.interfaces import BaseConvexSet, UsageError
from hierfp.core.linalg import Vector
from hierfp.logging_config import get_logger
from hierfp.operators.maps import NearlyNonexpansiveFamily, NonexpansiveMap, Sequence
from hierfp.operators.sequences import zero_sequence
from hierfp.sets import AffineSubspace, Ball, Box

logger = get_logger(__name__)

MONOTONE_PREFIX = 100


def _require_sampling_region(region: BaseConvexSet) -> None:
    if not isinstance(region, (Box, Ball)):
        raise UsageError(
            f"deviation sampling needs a bounded Box or Ball region, got "
            f"{type(region).__name__}"
        )


def constant_residual_family(
    base: NonexpansiveMap, a_seq: Sequence = zero_sequence
) -> NearlyNonexpansiveFamily:
    """T_n = T for every n; the inequality then holds with any a_n >= 0."""

    def eval_n(n: int, x: Vector) -> Vector:
        return base(x)

    return NearlyNonexpansiveFamily(
        eval_n=eval_n,
        a_seq=a_seq,
        limit_map=base,
        common_fixed_set=base.fixed_set_hint,
        name=f"const[{base.name}]",
        constant=True,
    )


def perturbed_family(
    base: NonexpansiveMap, c_seq: Sequence, region_diameter: float
) -> NearlyNonexpansiveFamily:
    """T_n(x) = T(x) + c_n (x - p) around the unique fixed point p of T.

    On a region of diameter D this satisfies the nearly nonexpansive
    inequality with a_n = c_n D, and every T_n fixes p.
    """
    hint = base.fixed_set_hint
    if not (isinstance(hint, AffineSubspace) and not hint.basis):
        raise UsageError(
            "perturbed_family needs a base map with a declared unique fixed point"
        )
    if region_diameter <= 0:
        raise UsageError(f"region diameter must be positive, got {region_diameter}")
    prefix = [c_seq(n) for n in range(1, MONOTONE_PREFIX + 1)]
    if any(c < 0 for c in prefix) or any(b > a for a, b in zip(prefix, prefix[1:])):
        raise UsageError("c_seq must be nonnegative and nonincreasing")
    p = np.array(hint.offset, dtype=np.float64)
    p.setflags(write=False)

    def eval_n(n: int, x: Vector) -> Vector:
        return base(x) + c_seq(n) * (x - p)

    def a_seq(n: int) -> float:
        return c_seq(n) * region_diameter

    return NearlyNonexpansiveFamily(
        eval_n=eval_n,
        a_seq=a_seq,
        limit_map=base,
        common_fixed_set=hint,
        name=f"perturbed[{base.name}]",
    )


def deviation_estimate(
    family: NearlyNonexpansiveFamily,
    m: int,
    k: int,
    region: BaseConvexSet,
    samples: int,
    seed: int,
) -> float:
    """Monte Carlo lower estimate of sup_{x in region} ||T_m x - T_k x||."""
    _require_sampling_region(region)
    if samples < 1:
        raise UsageError(f"samples must be >= 1, got {samples}")
    if m == k:
        return 0.0
    points = region.sample(np.random.default_rng(seed), samples)
    return max(float(np.linalg.norm(family(m, x) - family(k, x))) for x in points)


def deviation_sequence(
    family: NearlyNonexpansiveFamily, region: BaseConvexSet, samples: int, seed: int
) -> Callable[[int], float]:
    """n -> estimate of D(T_n, T_{n+1}) on one fixed sample of the region.

    A constant family has deviation identically zero and skips sampling.
    """
    if family.constant:
        return zero_sequence
    _require_sampling_region(region)
    points = region.sample(np.random.default_rng(seed), samples)

    def deviation(n: int) -> float:
        return max(
            float(np.linalg.norm(family(n, x) - family(n + 1, x))) for x in points
        )

    return deviation


def check_nearly_nonexpansive(
    family: NearlyNonexpansiveFamily,
    region: BaseConvexSet,
    n_values: Iterable[int],
    pairs: int,
    seed: int,
) -> float:
    """Largest ||T_n x - T_n y|| - ||x - y|| - a_n over sampled pairs.

    A value <= 1e-9 means the inequality held on every sampled pair.
    """
    _require_sampling_region(region)
    rng = np.random.default_rng(seed)
    xs = region.sample(rng, pairs)
    ys = region.sample(rng, pairs)
    worst = -np.inf
    for n in n_values:
        a_n = family.a_seq(n)
        for x, y in zip(xs, ys):
            excess = (
                float(np.linalg.norm(family(n, x) - family(n, y)))
                - float(np.linalg.norm(x - y))
                - a_n
            )
            worst = max(worst, excess)
    logger.debug(
        "Nearly nonexpansive check finished",
        extra={"family": family.name, "pairs": pairs, "worst_excess": worst},
    )
    return float(worst)
