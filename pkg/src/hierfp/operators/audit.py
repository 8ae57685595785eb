"""Empirical audits of declared operator constants on sampled pairs.

Declared constants are trusted inputs. An audit that finds a violating pair
reports it; callers log a warning and carry on.
"""

from collections.abc import Callable

import numpy as np

from hierfp.core.interfaces import BaseConvexSet, UsageError
from hierfp.core.linalg import Vector
from hierfp.core.models import AuditReport
from hierfp.operators.maps import LipschitzMap, NonexpansiveMap, StronglyMonotoneOp

AUDIT_TOL = 1e-9


def _pairs(
    region: BaseConvexSet, pairs: int, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    if pairs < 1:
        raise UsageError(f"pairs must be >= 1, got {pairs}")
    if not region.is_bounded:
        raise UsageError(
            f"audits need a bounded sampling region, got {type(region).__name__}"
        )
    rng = np.random.default_rng(seed)
    return region.sample(rng, pairs), region.sample(rng, pairs)


def _lipschitz_audit(
    ev: Callable[[Vector], Vector],
    declared: float,
    subject: str,
    prop: str,
    region: BaseConvexSet,
    pairs: int,
    seed: int,
) -> AuditReport:
    xs, ys = _pairs(region, pairs, seed)
    worst = 0.0
    violations = 0
    for x, y in zip(xs, ys):
        gap = float(np.linalg.norm(x - y))
        image_gap = float(np.linalg.norm(ev(x) - ev(y)))
        if image_gap > declared * gap + AUDIT_TOL:
            violations += 1
        if gap > 0:
            worst = max(worst, image_gap / gap)
    return AuditReport(
        subject=subject,
        property=prop,  # type: ignore[arg-type]
        declared=declared,
        worst=worst,
        violations=violations,
        pairs=pairs,
        seed=seed,
    )


def audit_lipschitz(
    v: LipschitzMap | StronglyMonotoneOp,
    region: BaseConvexSet,
    pairs: int = 1000,
    seed: int = 0,
) -> AuditReport:
    """Worst observed ||Vx - Vy|| / ||x - y|| against the declared constant."""
    declared = v.gamma if isinstance(v, LipschitzMap) else v.lip
    return _lipschitz_audit(v, declared, v.name, "lipschitz", region, pairs, seed)


def audit_nonexpansive(
    t: NonexpansiveMap, region: BaseConvexSet, pairs: int = 1000, seed: int = 0
) -> AuditReport:
    return _lipschitz_audit(t, 1.0, t.name, "nonexpansive", region, pairs, seed)


def audit_strong_monotonicity(
    f: StronglyMonotoneOp, region: BaseConvexSet, pairs: int = 1000, seed: int = 0
) -> AuditReport:
    """Smallest observed <Fx - Fy, x - y> / ||x - y||^2 against eta."""
    xs, ys = _pairs(region, pairs, seed)
    worst = np.inf
    violations = 0
    for x, y in zip(xs, ys):
        d = x - y
        sq = float(d @ d)
        pairing = float((f(x) - f(y)) @ d)
        if pairing < f.eta * sq - AUDIT_TOL:
            violations += 1
        if sq > 0:
            worst = min(worst, pairing / sq)
    return AuditReport(
        subject=f.name,
        property="strong_monotonicity",
        declared=f.eta,
        worst=float(worst) if np.isfinite(worst) else f.eta,
        violations=violations,
        pairs=pairs,
        seed=seed,
    )
