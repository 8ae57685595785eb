"""Finite-horizon validation of the step-size conditions (C1)-(C3).

The conditions are limits, so a finite prefix can only support them. Each
clause gets a three-valued verdict; power schedules are judged exactly from
their exponents wherever the clause depends on alpha and beta alone.
"""

from collections.abc import Callable, Iterable
from typing import Literal, Optional

import numpy as np

from hierfp.core.interfaces import UsageError
from hierfp.core.models import ClauseReport, ScheduleReport, Verdict
from hierfp.logging_config import get_logger
from hierfp.schedules.schedule import ALPHA_LIMIT, BETA_RATIO, SUM_ALPHA, Schedule

logger = get_logger(__name__)

DEFAULT_HORIZON = 10_000
MIN_HORIZON = 100
TAIL_FRACTION = 0.1
ZERO_TOL = 1e-14
PASS_SLOPE = -0.01
FAIL_SLOPE = -0.001
MONOTONE_RTOL = 1e-6
REPORTED_TAIL = 10
MIN_TAIL = 10

ALPHA_TO_ZERO = ALPHA_LIMIT
BETA_TO_ZERO = "βₙ→0"
A_RATIO = "aₙ/αₙ→0"
ALPHA_DIFF = "|αₙ−αₙ₋₁|/αₙ→0"
BETA_DIFF = "|βₙ−βₙ₋₁|/αₙ→0"
DEV_TO_ZERO = "𝔇ₙ→0"
DEV_RATIO = "𝔇ₙ/αₙ→0"

CLAUSES: dict[str, Literal["C1", "C2", "C3"]] = {
    ALPHA_TO_ZERO: "C1",
    SUM_ALPHA: "C1",
    BETA_TO_ZERO: "C1",
    A_RATIO: "C2",
    BETA_RATIO: "C2",
    ALPHA_DIFF: "C2",
    BETA_DIFF: "C2",
    DEV_TO_ZERO: "C3",
    DEV_RATIO: "C3",
}

# Clauses that hold trivially for nonexpansive sequences and convex combinations.
WAIVE_NONEXPANSIVE_SEQUENCE = (A_RATIO,)
WAIVE_CONVEX_COMBINATION = (A_RATIO, DEV_TO_ZERO, DEV_RATIO)


def _thin(ns: np.ndarray, values: np.ndarray) -> tuple[list[int], list[float]]:
    idx = np.unique(np.linspace(0, len(ns) - 1, min(REPORTED_TAIL, len(ns))).astype(int))
    return [int(n) for n in ns[idx]], [float(v) for v in values[idx]]


def tail_verdict(ns: np.ndarray, values: np.ndarray) -> tuple[Verdict, str]:
    """Verdict for a sequence that must vanish, from its tail samples."""
    r = np.abs(values)
    if len(r) < MIN_TAIL:
        return Verdict.INCONCLUSIVE, f"tail of {len(r)} samples is too short"
    if np.all(r <= ZERO_TOL):
        return Verdict.PASS, "identically zero on the tail"
    slope = float(np.polyfit(np.log(ns), np.log(np.maximum(r, 1e-300)), 1)[0])
    monotone = bool(np.all(np.diff(r) <= MONOTONE_RTOL * r.max()))
    if slope <= PASS_SLOPE and monotone:
        return Verdict.PASS, f"slope {slope:.3g}"
    if slope >= FAIL_SLOPE:
        return Verdict.FAIL, f"slope {slope:.3g}, not decaying"
    return Verdict.INCONCLUSIVE, f"slope {slope:.3g}, monotone={monotone}"


def harmonic_verdict(ns: np.ndarray, alpha: np.ndarray) -> tuple[Verdict, str]:
    """Sum alpha_n = inf judged by n * alpha_n against the harmonic bound."""
    if len(alpha) < MIN_TAIL:
        return Verdict.INCONCLUSIVE, f"tail of {len(alpha)} samples is too short"
    if np.all(alpha <= ZERO_TOL):
        return Verdict.FAIL, "alpha eventually zero"
    scaled = ns * alpha
    slope = float(np.polyfit(np.log(ns), np.log(np.maximum(scaled, 1e-300)), 1)[0])
    if slope >= FAIL_SLOPE:
        return Verdict.PASS, f"n·αₙ bounded below (slope {slope:.3g})"
    return Verdict.INCONCLUSIVE, f"n·αₙ decays (slope {slope:.3g})"


def _power_verdicts(s: float, t: float) -> dict[str, tuple[Verdict, str]]:
    def exact(ok: bool, why: str) -> tuple[Verdict, str]:
        return (Verdict.PASS if ok else Verdict.FAIL), why

    return {
        ALPHA_TO_ZERO: exact(s > 0, f"s={s:g}"),
        SUM_ALPHA: exact(s <= 1, f"p-series with s={s:g}"),
        BETA_TO_ZERO: exact(t > 0, f"t={t:g}"),
        BETA_RATIO: exact(t > s, f"n^({s:g}-{t:g})"),
        ALPHA_DIFF: exact(s > 0, f"~ {s:g}/n"),
        BETA_DIFF: exact(t + 1 > s, f"~ n^({s:g}-{t:g}-1)"),
    }


def validate_schedule(
    sch: Schedule,
    a_seq: Callable[[int], float],
    dev_ratio: Optional[Callable[[int], float]],
    horizon: int = DEFAULT_HORIZON,
    waive: Iterable[str] = (),
    deviation_region: Optional[str] = None,
    deviation_seed: Optional[int] = None,
) -> ScheduleReport:
    """Judge every clause of (C1)-(C3) on n = 1..horizon.

    `dev_ratio` is the deviation sequence n -> D(T_n, T_{n+1}) on the working
    region; both D_n and D_n / alpha_n are judged. None leaves (C3)
    inconclusive. Tables are read past their end at their last value.
    """
    if horizon < MIN_HORIZON:
        raise UsageError(f"horizon must be >= {MIN_HORIZON}, got {horizon}")
    waived = list(dict.fromkeys(waive))
    unknown = [w for w in waived if w not in CLAUSES]
    if unknown:
        raise UsageError(f"unknown clauses to waive: {unknown}; known: {list(CLAUSES)}")

    ns = np.arange(1, horizon + 1, dtype=np.float64)
    alpha = np.array([sch.alpha(n) for n in range(1, horizon + 1)])
    beta = np.array([sch.beta(n) for n in range(1, horizon + 1)])
    tail = slice(max(1, int(np.floor(horizon * (1 - TAIL_FRACTION)))), horizon)
    tail_ns = ns[tail]

    with np.errstate(divide="ignore", invalid="ignore"):
        safe_alpha = np.where(alpha > 0, alpha, np.nan)
        prev_alpha = np.concatenate(([alpha[0]], alpha[:-1]))
        prev_beta = np.concatenate(([beta[0]], beta[:-1]))
        series: dict[str, np.ndarray] = {
            ALPHA_TO_ZERO: alpha,
            SUM_ALPHA: ns * alpha,
            BETA_TO_ZERO: beta,
            A_RATIO: np.array([a_seq(n) for n in range(1, horizon + 1)]) / safe_alpha,
            BETA_RATIO: beta / safe_alpha,
            ALPHA_DIFF: np.abs(alpha - prev_alpha) / safe_alpha,
            BETA_DIFF: np.abs(beta - prev_beta) / safe_alpha,
        }
        if dev_ratio is not None:
            dev = np.array([dev_ratio(n) for n in range(1, horizon + 1)])
            series[DEV_TO_ZERO] = dev
            series[DEV_RATIO] = dev / safe_alpha

    analytic: dict[str, tuple[Verdict, str]] = {}
    if sch.kind == "power":
        analytic = _power_verdicts(
            float(sch.descriptor["s"]), float(sch.descriptor["t"])
        )
        if sch.descriptor.get("beta") == "zero":
            for name in (BETA_TO_ZERO, BETA_RATIO, BETA_DIFF):
                analytic.pop(name)

    clauses: list[ClauseReport] = []
    for name, condition in CLAUSES.items():
        if name in waived:
            continue
        method: Literal["analytic", "tail", "harmonic"]
        values = series.get(name)
        if values is None:
            verdict, note, method = Verdict.INCONCLUSIVE, "deviation not supplied", "tail"
            tail_n, tail_values = [], []
        else:
            tail_values_arr = values[tail]
            if name in analytic:
                (verdict, note), method = analytic[name], "analytic"
            elif np.any(~np.isfinite(tail_values_arr)):
                verdict, note, method = Verdict.FAIL, "αₙ vanishes on the tail", "tail"
            elif name == SUM_ALPHA:
                (verdict, note), method = harmonic_verdict(tail_ns, alpha[tail]), "harmonic"
            else:
                (verdict, note), method = tail_verdict(tail_ns, tail_values_arr), "tail"
            tail_n, tail_values = _thin(tail_ns, np.nan_to_num(tail_values_arr, nan=np.inf))
        clauses.append(
            ClauseReport(
                condition=condition,
                clause=name,
                verdict=verdict,
                method=method,
                tail_n=tail_n,
                tail_values=tail_values,
                note=note,
            )
        )

    report = ScheduleReport(
        descriptor=dict(sch.descriptor),
        horizon=horizon,
        clauses=clauses,
        waived=waived,
        deviation_region=deviation_region,
        deviation_seed=deviation_seed,
    )
    logger.debug(
        "Schedule validated",
        extra={"descriptor": sch.descriptor, "horizon": horizon, "verdict": report.verdict.value},
    )
    return report
