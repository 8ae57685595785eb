"""Experiment orchestration: assemble, iterate, certify and persist."""

import asyncio
import uuid
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from hierfp.core.interfaces import DivergenceError, StageExecutionError
from hierfp.core.models import (
    CertificateReport,
    ConstantsReport,
    OracleResult,
    RunSummary,
    ScheduleReport,
    VariantTag,
)
from hierfp.diagnostics.oracle import certify, oracle_solve
from hierfp.diagnostics.residuals import make_vi_residual
from hierfp.harness.config import ExperimentSpec, sub_seed
from hierfp.harness.problems import build_problem
from hierfp.harness.trace_io import write_comparison, write_trace
from hierfp.logging_config import get_logger, log_stage, run_id_var
from hierfp.operators.constants import validate_constants
from hierfp.operators.families import deviation_sequence
from hierfp.operators.maps import NearlyNonexpansiveFamily
from hierfp.schedules.schedule import Schedule
from hierfp.schedules.validation import (
    WAIVE_CONVEX_COMBINATION,
    WAIVE_NONEXPANSIVE_SEQUENCE,
    validate_schedule,
)
from hierfp.solver.engine import IterationTrace, ProblemSpec, RunResult, run
from hierfp.solver.variants import make_variant

logger = get_logger(__name__)


@dataclass(frozen=True)
class SolveOutcome:
    summary: RunSummary
    result: Optional[RunResult]
    oracle: Optional[OracleResult] = None


class ExperimentRunner:
    """Runs the stages of one experiment spec."""

    def __init__(self, spec: ExperimentSpec):
        self.spec = spec
        self.config = spec.problem_config()
        self.run_id = uuid.uuid4().hex[:12]
        run_id_var.set(self.run_id)

    @log_stage("Problem Assembly")
    def prepare(self, variant: VariantTag) -> tuple[ProblemSpec, Schedule]:
        """Build the problem and schedule, restricted to variant."""
        prob = build_problem(self.config, audit_seed=sub_seed(self.spec.seed, "audit"))
        sch = self.spec.resolved_schedule().build()
        weights, maps = None, None
        if variant is VariantTag.CONVEX_COMBO and self.config.combo is not None:
            weights, maps = self.config.combo.weights, self.config.combo.members()
        return make_variant(variant, prob, sch, weights=weights, maps=maps)

    @log_stage("Oracle")
    def oracle(self, prob: ProblemSpec) -> OracleResult:
        return oracle_solve(prob)

    @log_stage("Iteration")
    def iterate(
        self,
        prob: ProblemSpec,
        sch: Schedule,
        oracle: Optional[OracleResult] = None,
        with_vi: bool = False,
    ) -> RunResult:
        vi_residual_fn = (
            make_vi_residual(
                prob, self.spec.certify_samples, sub_seed(self.spec.seed, "vi_residual")
            )
            if with_vi
            else None
        )
        x1 = self.spec.resolved_x1()
        return run(
            prob,
            sch,
            x1=None if x1 is None else np.array(x1),
            stop=self.spec.resolved_stopping(),
            oracle=None if oracle is None else np.array(oracle.solution),
            vi_residual_fn=vi_residual_fn,
        )

    @log_stage("Certification")
    def certify(
        self, prob: ProblemSpec, x: np.ndarray, oracle: OracleResult
    ) -> CertificateReport:
        return certify(
            prob,
            x,
            samples=self.spec.certify_samples,
            seed=sub_seed(self.spec.seed, "certify"),
            oracle=oracle,
        )

    @log_stage("Trace Output")
    def write(self, trace: IterationTrace, path: Path) -> Path:
        return write_trace(trace, path)

    def solve(self, variant: Optional[VariantTag] = None) -> SolveOutcome:
        """Run one variant end to end; divergence becomes a status, not an exception."""
        tag = variant or self.spec.variant
        prob, sch = self.prepare(tag)
        oracle = self.oracle(prob) if self.spec.certify else None
        out = Path(self.spec.out) if self.spec.out else None
        try:
            result = self.iterate(prob, sch, oracle=oracle, with_vi=self.spec.certify)
        except StageExecutionError as e:
            if not isinstance(e.original_exception, DivergenceError):
                raise
            divergence = e.original_exception
            if out is not None and divergence.partial_trace is not None:
                self.write(divergence.partial_trace, out)
            summary = RunSummary(
                problem=prob.name,
                variant=tag,
                status="diverged",
                steps=divergence.step_index,
                final_iterate=(),
                elapsed_s=0.0,
                seed=self.spec.seed,
                trace_path=str(out) if out else None,
                error=str(divergence),
            )
            return SolveOutcome(summary=summary, result=None, oracle=oracle)

        certificate = (
            self.certify(prob, result.x, oracle)
            if self.spec.certify and oracle is not None
            else None
        )
        if out is not None:
            self.write(result.trace, out)
        last = result.trace.rows[-1]
        summary = RunSummary(
            problem=prob.name,
            variant=tag,
            status=result.status,
            steps=result.steps,
            final_iterate=tuple(float(v) for v in result.x),
            step_norm=last.step_norm,
            fp_residual=last.fp_residual,
            elapsed_s=result.elapsed_s,
            seed=self.spec.seed,
            certificate=certificate,
            trace_path=str(out) if out else None,
        )
        return SolveOutcome(summary=summary, result=result, oracle=oracle)

    def _run_variant(
        self, tag: VariantTag, oracle: OracleResult
    ) -> tuple[VariantTag, RunResult]:
        prob, sch = self.prepare(tag)
        return tag, self.iterate(prob, sch, oracle=oracle)

    async def compare(
        self, variants: list[VariantTag]
    ) -> tuple[OracleResult, dict[VariantTag, RunResult]]:
        """One run per variant on identical inputs, executed concurrently."""
        base, _ = self.prepare(VariantTag.MAIN)
        oracle = self.oracle(base)
        # Fail on an inapplicable variant before any run starts.
        for tag in variants:
            self.prepare(tag)
        finished = await asyncio.gather(
            *(asyncio.to_thread(self._run_variant, tag, oracle) for tag in variants)
        )
        results = dict(finished)
        if self.spec.out:
            self.write_comparison(results, Path(self.spec.out))
        return oracle, results

    @log_stage("Comparison Output")
    def write_comparison(self, results: dict[VariantTag, RunResult], path: Path) -> Path:
        return write_comparison(
            {tag.value: result.trace for tag, result in results.items()}, path
        )

    def waivers(self, family: NearlyNonexpansiveFamily) -> list[str]:
        """Declared waivers plus those implied by a constant family or a combo."""
        waive = list(self.config.waive)
        if family.constant:
            waive.extend(WAIVE_NONEXPANSIVE_SEQUENCE)
        if self.config.combo is not None:
            waive.extend(WAIVE_CONVEX_COMBINATION)
        return list(dict.fromkeys(waive))

    @log_stage("Schedule Validation")
    def validate(self) -> tuple[ConstantsReport, ScheduleReport]:
        """Constants report plus the (C1)-(C3) report with Monte Carlo deviations."""
        constants_report = validate_constants(self.config.constants)
        box = self.config.resolved_sampling_box()
        family = self.config.family.build(box.diameter() if box is not None else None)
        seed = sub_seed(self.spec.seed, "deviation")
        deviation = (
            deviation_sequence(family, box, self.spec.deviation_samples, seed)
            if box is not None
            else None
        )
        report = validate_schedule(
            self.spec.resolved_schedule().build(),
            family.a_seq,
            deviation,
            horizon=self.spec.horizon,
            waive=self.waivers(family),
            deviation_region=box.model_dump_json() if box is not None else None,
            deviation_seed=seed,
        )
        return constants_report, report
