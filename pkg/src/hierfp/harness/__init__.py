"""Experiment front-end: configs, problem registry, runs and CSV traces."""

from hierfp.harness.config import ExperimentSpec, emit_config, parse_config, sub_seed
from hierfp.harness.problems import (
    PROBLEM_REGISTRY,
    ProblemConfig,
    build_problem,
    get_problem_config,
)
from hierfp.harness.runner import ExperimentRunner, SolveOutcome
from hierfp.harness.trace_io import write_comparison, write_trace

__all__ = [
    "ExperimentRunner",
    "ExperimentSpec",
    "PROBLEM_REGISTRY",
    "ProblemConfig",
    "SolveOutcome",
    "build_problem",
    "emit_config",
    "get_problem_config",
    "parse_config",
    "sub_seed",
    "write_comparison",
    "write_trace",
]
