"""The iteration engine.

One step maps (x_n, n) to

    y_n     = P_C(beta_n S x_n + (1 - beta_n) x_n)
    x_{n+1} = P_C(alpha_n rho V x_n + T_n y_n - alpha_n mu F(T_n y_n))

A run is strictly sequential; problems and schedules are immutable and can be
shared between concurrent runs.
"""

import math
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from hierfp.core.interfaces import BaseConvexSet, DivergenceError, UsageError
from hierfp.core.linalg import Vector, as_vector
from hierfp.logging_config import get_logger
from hierfp.operators.constants import Constants, require_admissible
from hierfp.operators.maps import (
    LipschitzMap,
    NearlyNonexpansiveFamily,
    NonexpansiveMap,
    StronglyMonotoneOp,
)
from hierfp.schedules.schedule import Schedule
from hierfp.sets import Box

logger = get_logger(__name__)

RECORD_EVERY_STEP_UNTIL = 1000
RECORD_STRIDE = 10
WITNESS_TOL = 1e-8
CONSTANT_SLACK = 1e-12


@dataclass(frozen=True)
class ProblemSpec:
    """One instance (C, S, V, F, {T_n}, constants) of the hierarchical problem.

    The declared constants may be conservative: V's gamma and F's L must not
    exceed them and F's eta must not fall below theirs.
    """

    set_C: BaseConvexSet
    S: NonexpansiveMap
    V: LipschitzMap
    F: StronglyMonotoneOp
    family: NearlyNonexpansiveFamily
    constants: Constants
    sampling_box: Optional[Box] = None
    witness: Optional[Vector] = None
    name: str = "inline"
    nu: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nu", require_admissible(self.constants))
        c = self.constants
        if self.V.gamma > c.gamma + CONSTANT_SLACK:
            raise UsageError(f"V has gamma={self.V.gamma:g} above declared {c.gamma:g}")
        if self.F.lip > c.lip + CONSTANT_SLACK or self.F.eta < c.eta - CONSTANT_SLACK:
            raise UsageError(
                f"F has L={self.F.lip:g}, eta={self.F.eta:g}; declared "
                f"L={c.lip:g}, eta={c.eta:g}"
            )
        fset = self.family.common_fixed_set
        if fset is None:
            raise UsageError(
                f"family {self.family.name} declares no common fixed-point set"
            )
        if fset.dim != self.set_C.dim:
            raise UsageError(
                f"fixed-point set lives in R^{fset.dim}, C in R^{self.set_C.dim}"
            )
        witness = (
            fset.project(np.zeros(fset.dim))
            if self.witness is None
            else as_vector(self.witness, dim=fset.dim)
        )
        if not fset.contains(witness, WITNESS_TOL):
            raise UsageError("witness point does not lie in the common fixed-point set")
        witness = np.array(witness)
        witness.setflags(write=False)
        object.__setattr__(self, "witness", witness)

    @property
    def dim(self) -> int:
        return self.set_C.dim

    @property
    def fixed_set(self) -> BaseConvexSet:
        assert self.family.common_fixed_set is not None
        return self.family.common_fixed_set


@dataclass(frozen=True)
class SolverState:
    """Iterate x_n at index n, with y the inner iterate of the previous step."""

    n: int
    x: Vector
    y: Vector


@dataclass(frozen=True)
class TraceRow:
    n: int
    alpha: float
    beta: float
    a_n: float
    step_norm: float
    fp_residual: float
    vi_residual: Optional[float] = None
    dist_oracle: Optional[float] = None


@dataclass
class IterationTrace:
    """Recorded rows: every step up to n = 1000, then every 10th, plus the last."""

    rows: list[TraceRow] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(row, name) for row in self.rows], dtype=np.float64)

    @property
    def has_vi(self) -> bool:
        return any(row.vi_residual is not None for row in self.rows)

    @property
    def has_oracle(self) -> bool:
        return any(row.dist_oracle is not None for row in self.rows)


class StoppingRule(BaseModel):
    """Stop at max_steps, or once both the step norm and the fixed-point
    residual fall below their tolerances."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    max_steps: int = Field(default=200_000, ge=1)
    step_tol: float = Field(default=1e-10, ge=0)
    residual_tol: float = Field(default=1e-8, ge=0)


@dataclass(frozen=True)
class RunResult:
    x: Vector
    trace: IterationTrace
    converged: bool
    steps: int
    elapsed_s: float

    @property
    def status(self) -> Literal["converged", "not_converged"]:
        return "converged" if self.converged else "not_converged"


def _finite(n: int, v: Vector, quantity: str) -> Vector:
    # NaN and inf propagate through the sum, so one check covers every component.
    if not math.isfinite(float(v.sum())):
        raise DivergenceError(n, quantity)
    return v


def step(state: SolverState, prob: ProblemSpec, sch: Schedule) -> SolverState:
    """One application of the main iteration at index state.n.

    Every argument of P_C is checked for finiteness before it is projected.
    """
    n, x = state.n, state.x
    alpha, beta = sch.alpha(n), sch.beta(n)
    mu, rho = prob.constants.mu, prob.constants.rho
    y_arg = beta * prob.S(x) + (1.0 - beta) * x
    y = prob.set_C.project(_finite(n, y_arg, "y argument"))
    ty = _finite(n, prob.family(n, y), "T_n y")
    x_arg = alpha * rho * prob.V(x) + (ty - alpha * mu * prob.F(ty))
    x_next = _finite(n, prob.set_C.project(_finite(n, x_arg, "x argument")), "x")
    return SolverState(n=n + 1, x=x_next, y=y)


def run(
    prob: ProblemSpec,
    sch: Schedule,
    x1: Optional[Vector] = None,
    stop: Optional[StoppingRule] = None,
    oracle: Optional[Vector] = None,
    vi_residual_fn: Optional[Callable[[Vector], float]] = None,
    on_step: Optional[Callable[[SolverState], None]] = None,
) -> RunResult:
    """Iterate from x1 (projected into C; default P_C(0)) until the rule fires.

    `oracle` fills dist_oracle and `vi_residual_fn` fills vi_residual on recorded
    rows. `on_step` sees every state, including the initial one.
    """
    stop = stop or StoppingRule()
    start = np.zeros(prob.dim) if x1 is None else as_vector(x1, dim=prob.dim)
    x = prob.set_C.project(start)
    if not np.array_equal(x, start):
        logger.debug("Initial point projected into C", extra={"x1": start.tolist()})
    limit_map = prob.family.limit_map
    oracle_point = None if oracle is None else as_vector(oracle, dim=prob.dim)

    logger.info(
        "Run started",
        extra={
            "problem": prob.name,
            "schedule": sch.descriptor,
            "max_steps": stop.max_steps,
        },
    )
    started = time.perf_counter()
    state = SolverState(n=1, x=x, y=x)
    if on_step is not None:
        on_step(state)
    trace = IterationTrace()
    converged = False

    def record(s: SolverState, step_norm: float, fp: Optional[float]) -> None:
        n = s.n - 1
        trace.rows.append(
            TraceRow(
                n=n,
                alpha=sch.alpha(n),
                beta=sch.beta(n),
                a_n=prob.family.a_seq(n),
                step_norm=step_norm,
                fp_residual=(
                    fp if fp is not None else float(np.linalg.norm(s.x - limit_map(s.x)))
                ),
                vi_residual=None if vi_residual_fn is None else vi_residual_fn(s.x),
                dist_oracle=(
                    None
                    if oracle_point is None
                    else float(np.linalg.norm(s.x - oracle_point))
                ),
            )
        )

    step_norm = 0.0
    fp: Optional[float] = None
    try:
        for n in range(1, stop.max_steps + 1):
            nxt = step(state, prob, sch)
            diff = nxt.x - state.x
            step_norm = math.sqrt(float(diff @ diff))
            state = nxt
            if on_step is not None:
                on_step(state)
            fp = None
            if step_norm < stop.step_tol:
                fp = float(np.linalg.norm(state.x - limit_map(state.x)))
                converged = fp < stop.residual_tol
            if n <= RECORD_EVERY_STEP_UNTIL or n % RECORD_STRIDE == 0 or converged:
                record(state, step_norm, fp)
            if converged:
                break
    except DivergenceError as e:
        e.partial_trace = trace
        logger.error(
            "Run diverged",
            extra={"problem": prob.name, "step": e.step_index, "quantity": e.quantity},
        )
        raise

    steps = state.n - 1
    if not trace.rows or trace.rows[-1].n != steps:
        record(state, step_norm, fp)
    elapsed = time.perf_counter() - started
    result = RunResult(
        x=state.x, trace=trace, converged=converged, steps=steps, elapsed_s=elapsed
    )
    log = logger.info if converged else logger.warning
    log(
        "Run finished",
        extra={
            "problem": prob.name,
            "status": result.status,
            "steps": steps,
            "step_norm": step_norm,
            "fp_residual": trace.rows[-1].fp_residual,
            "elapsed_s": round(elapsed, 3),
        },
    )
    return result
