"""Independent projected-gradient oracle for the variational inequality.

The operator mu F - rho V is strongly monotone, so z <- P(z - tau (mu F - rho V) z)
is a contraction on the fixed-point set for small tau and its fixed point is
the unique solution. It shares nothing with the main iteration, which makes
agreement between the two meaningful.
"""

from dataclasses import replace
from typing import Optional

import numpy as np

from hierfp.core.interfaces import ConstantsError, OracleNotConvergedError, UsageError
from hierfp.core.linalg import Vector, as_vector
from hierfp.core.models import CertificateReport, OracleResult
from hierfp.diagnostics.residuals import (
    DEFAULT_SAMPLES,
    hierarchical_residual,
    sample_fixed_set,
    vi_residual,
)
from hierfp.logging_config import get_logger
from hierfp.operators.constants import Constants, scale_constants
from hierfp.operators.library import hierarchical_map
from hierfp.solver.engine import ProblemSpec

logger = get_logger(__name__)

ORACLE_TOL = 1e-11
ORACLE_MAX_ITER = 100_000
SPECIALIZATION_TOL = 1e-12
MIN_NORM_TOL = 1e-2


def _monotone_constants(c: Constants) -> tuple[float, float]:
    """(strong monotonicity, Lipschitz constant) of mu F - rho V."""
    return c.mu * c.eta - c.rho * c.gamma, c.mu * c.lip + abs(c.rho) * c.gamma


def default_tau(c: Constants) -> float:
    """tau = (mu eta - rho gamma) / (mu L + rho gamma)^2, half the contraction bound."""
    m, lip = _monotone_constants(c)
    return m / lip**2


def oracle_solve(
    prob: ProblemSpec,
    tau: Optional[float] = None,
    tol: float = ORACLE_TOL,
    max_iter: int = ORACLE_MAX_ITER,
) -> OracleResult:
    """Projected gradient from z_0 = P(0) until successive iterates agree within tol."""
    m, lip = _monotone_constants(prob.constants)
    tau = default_tau(prob.constants) if tau is None else tau
    if not 0 < tau < 2 * m / lip**2:
        raise UsageError(f"tau must lie in (0, {2 * m / lip**2:g}), got {tau}")
    mu, rho = prob.constants.mu, prob.constants.rho
    fset = prob.fixed_set
    z = fset.project(np.zeros(prob.dim))
    change = float("inf")
    for k in range(1, max_iter + 1):
        z_next = fset.project(z - tau * (mu * prob.F(z) - rho * prob.V(z)))
        change = float(np.linalg.norm(z_next - z))
        z = z_next
        if change < tol:
            logger.debug(
                "Oracle converged", extra={"problem": prob.name, "iterations": k}
            )
            return OracleResult(
                solution=tuple(float(v) for v in z),
                iterations=k,
                final_residual=change,
                tau=tau,
            )
    raise OracleNotConvergedError(max_iter, change)


def is_min_norm_problem(prob: ProblemSpec) -> bool:
    """Whether V contributes nothing and F is the identity, checked on test points."""
    rng = np.random.default_rng(0)
    points = np.vstack([np.zeros(prob.dim), np.eye(prob.dim), rng.normal(size=(4, prob.dim))])
    for p in points:
        if not np.allclose(prob.F(p), p, rtol=0, atol=SPECIALIZATION_TOL):
            return False
        if prob.constants.rho != 0 and not np.allclose(
            prob.V(p), 0.0, rtol=0, atol=SPECIALIZATION_TOL
        ):
            return False
    return True


def min_norm_check(prob: ProblemSpec, x: Vector, tol: float = MIN_NORM_TOL) -> bool:
    """True iff x lies within tol of the minimum-norm point P(0) of the fixed-point set."""
    if not is_min_norm_problem(prob):
        raise UsageError(
            "min_norm_check needs V = 0 and F = identity; "
            f"problem {prob.name} is not of that form"
        )
    target = prob.fixed_set.project(np.zeros(prob.dim))
    return float(np.linalg.norm(as_vector(x, dim=prob.dim) - target)) <= tol


def scale_check(prob: ProblemSpec, factor: float, tol: float = 1e-6) -> Optional[bool]:
    """Scaling mu and rho together must not move the solution.

    Returns None when the scaled constants are no longer admissible.
    """
    try:
        scaled = replace(prob, constants=scale_constants(prob.constants, factor), witness=None)
    except ConstantsError as e:
        logger.debug("Scale check skipped", extra={"factor": factor, "reason": str(e)})
        return None
    before = np.array(oracle_solve(prob).solution)
    after = np.array(oracle_solve(scaled).solution)
    return float(np.linalg.norm(before - after)) <= tol


def certify(
    prob: ProblemSpec,
    x: Vector,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    oracle: Optional[OracleResult] = None,
) -> CertificateReport:
    """Residuals, oracle distance and (when applicable) the min-norm check for x."""
    x = as_vector(x, dim=prob.dim)
    oracle = oracle or oracle_solve(prob)
    c = prob.constants
    points = sample_fixed_set(prob, samples, seed)
    report = CertificateReport(
        vi_residual=vi_residual(x, prob, points=points),
        hierarchical_residual=hierarchical_residual(
            x,
            hierarchical_map(prob.V, prob.F, c.mu, c.rho),
            prob.fixed_set,
            samples,
            seed,
            box=prob.sampling_box,
        ),
        dist_oracle=float(np.linalg.norm(x - np.array(oracle.solution))),
        min_norm_ok=min_norm_check(prob, x) if is_min_norm_problem(prob) else None,
        samples=samples,
        seed=seed,
    )
    logger.info("Certificate computed", extra=report.model_dump())
    return report
