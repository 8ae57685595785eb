"""Iteration engine and its named variants."""

from hierfp.solver.engine import (
    IterationTrace,
    ProblemSpec,
    RunResult,
    SolverState,
    StoppingRule,
    TraceRow,
    run,
    step,
)
from hierfp.solver.variants import make_variant

__all__ = [
    "IterationTrace",
    "ProblemSpec",
    "RunResult",
    "SolverState",
    "StoppingRule",
    "TraceRow",
    "make_variant",
    "run",
    "step",
]
