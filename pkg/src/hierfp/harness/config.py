"""Experiment configuration: JSON documents validated by pydantic models."""

import hashlib
import json
from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from hierfp.core.interfaces import ConfigError
from hierfp.core.models import VariantTag
from hierfp.harness.problems import ProblemConfig, get_problem_config
from hierfp.operators.constants import Constants, require_admissible
from hierfp.schedules.schedule import ScheduleSpec
from hierfp.schedules.validation import DEFAULT_HORIZON, MIN_HORIZON
from hierfp.solver.engine import StoppingRule


class ExperimentSpec(BaseModel):
    """One experiment: a problem plus the overrides to run it with.

    Unset overrides fall back to the problem's own defaults.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    problem: Union[str, ProblemConfig] = "P1"
    schedule: Optional[ScheduleSpec] = None
    constants: Optional[Constants] = None
    variant: VariantTag = VariantTag.MAIN
    variants: list[VariantTag] = Field(
        default_factory=lambda: [VariantTag.MAIN, VariantTag.SAHU]
    )
    x1: Optional[tuple[float, ...]] = None
    stopping: Optional[StoppingRule] = None
    certify: bool = False
    certify_samples: int = Field(default=1000, ge=1)
    deviation_samples: int = Field(default=32, ge=1)
    horizon: int = Field(default=DEFAULT_HORIZON, ge=MIN_HORIZON)
    out: Optional[str] = None
    seed: int = Field(default=0, ge=0)

    def problem_config(self) -> ProblemConfig:
        """The problem with this spec's constants override applied."""
        base = (
            get_problem_config(self.problem)
            if isinstance(self.problem, str)
            else self.problem
        )
        if self.constants is not None:
            base = base.model_copy(update={"constants": self.constants})
        return base

    def resolved_stopping(self) -> StoppingRule:
        return self.stopping or self.problem_config().stopping or StoppingRule()

    def resolved_schedule(self) -> ScheduleSpec:
        return self.schedule or self.problem_config().schedule

    def resolved_x1(self) -> Optional[tuple[float, ...]]:
        return self.x1 if self.x1 is not None else self.problem_config().x1


def sub_seed(seed: int, component: str) -> int:
    """Deterministic 64-bit seed for one stochastic component."""
    digest = hashlib.sha256(f"{seed}:{component}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _format_validation_error(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        key = ".".join(str(p) for p in item["loc"]) or "<root>"
        parts.append(f"{key}: {item['msg']} (got {item.get('input')!r:.60})")
    return "; ".join(parts)


def parse_config(source: Union[str, Path]) -> ExperimentSpec:
    """Parse a JSON config given as a path or as text.

    Raises:
        ConfigError: If the document is not JSON or violates the schema
        ConstantsError: If the resolved constants are inadmissible
    """
    if isinstance(source, Path) or not source.lstrip().startswith("{"):
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e
    else:
        text = source
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config is not valid JSON: {e}") from e
    try:
        spec = ExperimentSpec.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"config schema violation: {_format_validation_error(e)}") from e
    require_admissible(spec.problem_config().constants)
    return spec


def emit_config(spec: ExperimentSpec) -> str:
    """JSON text of spec with every default written out."""
    return spec.model_dump_json(indent=2)
