"""Subcommand implementations; each returns the process exit code."""

import json
from typing import Optional

import numpy as np

from hierfp.core.interfaces import HierFPError, StageExecutionError, UsageError
from hierfp.core.models import VariantTag
from hierfp.harness.config import ExperimentSpec
from hierfp.harness.runner import ExperimentRunner
from hierfp.logging_config import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2

MEMBERSHIP_TOL = 1e-6


def unwrap(error: BaseException) -> BaseException:
    """The domain error behind a stage wrapper."""
    while isinstance(error, StageExecutionError):
        error = error.original_exception
    return error


def exit_code(error: BaseException) -> int:
    """Usage and config problems exit 2, runtime failures exit 1."""
    return EXIT_USAGE if isinstance(unwrap(error), UsageError) else EXIT_RUNTIME


def cmd_solve(spec: ExperimentSpec) -> int:
    """Run the selected variant, print the summary and write the trace CSV."""
    outcome = ExperimentRunner(spec).solve()
    print(outcome.summary.model_dump_json(indent=2))
    if outcome.summary.status == "diverged":
        logger.error("Run diverged", extra={"error": outcome.summary.error})
        return EXIT_RUNTIME
    return EXIT_OK


async def cmd_compare(
    spec: ExperimentSpec, variants: Optional[list[VariantTag]] = None
) -> int:
    """Concurrent runs of several variants on identical inputs."""
    variants = variants or spec.variants
    if len(set(variants)) != len(variants):
        raise UsageError(f"variants must be distinct, got {[v.value for v in variants]}")
    runner = ExperimentRunner(spec)
    oracle, results = await runner.compare(variants)
    target = np.array(oracle.solution)
    rows = {}
    for tag, result in results.items():
        rows[tag.value] = {
            "status": result.status,
            "steps": result.steps,
            "final_iterate": [float(v) for v in result.x],
            "dist_oracle": float(np.linalg.norm(result.x - target)),
        }
        if tag is VariantTag.CONVEX_COMBO and runner.config.combo is not None:
            rows[tag.value]["in_common_fixed_set"] = all(
                float(np.linalg.norm(member(result.x) - result.x)) <= MEMBERSHIP_TOL
                for member in runner.config.combo.members()
            )
    print(
        json.dumps(
            {
                "problem": runner.config.name,
                "oracle": list(oracle.solution),
                "variants": rows,
                "out": spec.out,
            },
            indent=2,
        )
    )
    return EXIT_OK


def cmd_validate(spec: ExperimentSpec, as_json: bool = False) -> int:
    """Constants and (C1)-(C3) reports; verdicts never change the exit code."""
    constants_report, schedule_report = ExperimentRunner(spec).validate()
    if as_json:
        print(
            json.dumps(
                {
                    "constants": constants_report.model_dump(mode="json"),
                    "schedule": schedule_report.model_dump(mode="json"),
                    "constants_passed": constants_report.passed,
                    "verdict": schedule_report.verdict.value,
                },
                indent=2,
            )
        )
    else:
        print(constants_report.render())
        print(schedule_report.render())
    return EXIT_OK


def cmd_oracle(spec: ExperimentSpec) -> int:
    runner = ExperimentRunner(spec)
    prob, _ = runner.prepare(VariantTag.MAIN)
    result = runner.oracle(prob)
    print(result.model_dump_json(indent=2))
    return EXIT_OK


def report_error(error: HierFPError) -> int:
    """Log error and map it to an exit code."""
    cause = unwrap(error)
    code = exit_code(error)
    logger.error(
        f"{type(cause).__name__}: {cause}",
        extra={"exit_code": code},
    )
    return code
