"""Data models shared across hierfp components."""

from enum import Enum
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class Verdict(str, Enum):
    """Three-valued verdict for conditions that finite data cannot prove."""

    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


class VariantTag(str, Enum):
    """Named specializations of the main iteration."""

    MAIN = "main"
    SAHU = "sahu"
    WANG_XU = "wang_xu"
    CENG = "ceng"
    CONVEX_COMBO = "convex_combo"


class InequalityCheck(BaseModel):
    """Outcome of one admissibility inequality on the constants."""

    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    detail: str


class ConstantsReport(BaseModel):
    """Pass/fail per admissibility inequality, with the derived nu."""

    model_config = ConfigDict(frozen=True)

    mu: float
    rho: float
    gamma: float
    lip: float
    eta: float
    nu: Optional[float] = None
    checks: list[InequalityCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> list[str]:
        """Names of the violated inequalities, quoted as in error messages."""
        return [f"{c.name} violated" for c in self.checks if not c.passed]

    def render(self) -> str:
        lines = [
            f"constants: mu={self.mu:g} rho={self.rho:g} gamma={self.gamma:g} "
            f"L={self.lip:g} eta={self.eta:g}",
            f"  nu = {self.nu:.6g}" if self.nu is not None else "  nu = undefined",
        ]
        for check in self.checks:
            mark = "pass" if check.passed else "FAIL"
            lines.append(f"  [{mark}] {check.name}: {check.detail}")
        return "\n".join(lines)


class AuditReport(BaseModel):
    """Empirical audit of a declared operator constant on sampled pairs."""

    model_config = ConfigDict(frozen=True)

    subject: str
    property: Literal["lipschitz", "strong_monotonicity", "nonexpansive"]
    declared: float
    worst: float
    violations: int
    pairs: int
    seed: int

    @property
    def passed(self) -> bool:
        return self.violations == 0


class ClauseReport(BaseModel):
    """Verdict for one clause of the step-size conditions."""

    model_config = ConfigDict(frozen=True)

    condition: Literal["C1", "C2", "C3"]
    clause: str
    verdict: Verdict
    method: Literal["analytic", "tail", "harmonic"]
    tail_n: list[int] = Field(default_factory=list)
    tail_values: list[float] = Field(default_factory=list)
    note: str = ""


class ScheduleReport(BaseModel):
    """Per-clause verdicts of (C1)-(C3) plus the sampled ratio tails."""

    descriptor: dict[str, object]
    horizon: int
    clauses: list[ClauseReport]
    waived: list[str] = Field(default_factory=list)
    deviation_region: Optional[str] = None
    deviation_seed: Optional[int] = None

    @property
    def verdict(self) -> Verdict:
        verdicts = {c.verdict for c in self.clauses}
        if Verdict.FAIL in verdicts:
            return Verdict.FAIL
        if Verdict.INCONCLUSIVE in verdicts:
            return Verdict.INCONCLUSIVE
        return Verdict.PASS

    def clause(self, name: str) -> ClauseReport:
        for report in self.clauses:
            if report.clause == name:
                return report
        raise KeyError(name)

    def condition_verdict(self, condition: str) -> Verdict:
        verdicts = {c.verdict for c in self.clauses if c.condition == condition}
        if Verdict.FAIL in verdicts:
            return Verdict.FAIL
        if Verdict.INCONCLUSIVE in verdicts:
            return Verdict.INCONCLUSIVE
        return Verdict.PASS

    def render(self) -> str:
        lines = [f"schedule {self.descriptor} (horizon {self.horizon})"]
        for report in self.clauses:
            tail = report.tail_values[-1] if report.tail_values else float("nan")
            lines.append(
                f"  ({report.condition}) {report.clause:<28} {report.verdict.value:<13}"
                f" [{report.method}] last={tail:.3e} {report.note}".rstrip()
            )
        for clause in self.waived:
            lines.append(f"  waived: {clause}")
        if self.deviation_region:
            lines.append(
                f"  deviation region: {self.deviation_region} (seed {self.deviation_seed})"
            )
        lines.append(f"  overall: {self.verdict.value}")
        return "\n".join(lines)


class OracleResult(BaseModel):
    """Solution of the variational inequality from the independent oracle."""

    model_config = ConfigDict(frozen=True)

    solution: tuple[float, ...]
    iterations: int
    final_residual: float
    method: str = "projected_gradient"
    tau: float


class CertificateReport(BaseModel):
    """Independent certification of a candidate limit."""

    model_config = ConfigDict(frozen=True)

    vi_residual: float
    hierarchical_residual: float
    dist_oracle: Optional[float] = None
    min_norm_ok: Optional[bool] = None
    samples: int
    seed: int


class RunSummary(BaseModel):
    """What `solve` reports after a run."""

    problem: str
    variant: VariantTag
    status: Literal["converged", "not_converged", "diverged"]
    steps: int
    final_iterate: tuple[float, ...]
    step_norm: Optional[float] = None
    fp_residual: Optional[float] = None
    elapsed_s: float
    seed: int
    certificate: Optional[CertificateReport] = None
    trace_path: Optional[str] = None
    error: Optional[str] = None
