"""Step-size schedules and their (C1)-(C3) validation."""

from hierfp.schedules.recurrence import xu_recurrence
from hierfp.schedules.schedule import (
    PowerScheduleConfig,
    Schedule,
    ScheduleSpec,
    TableScheduleConfig,
    power_schedule,
    table_schedule,
)
from hierfp.schedules.validation import (
    CLAUSES,
    WAIVE_CONVEX_COMBINATION,
    WAIVE_NONEXPANSIVE_SEQUENCE,
    validate_schedule,
)

__all__ = [
    "CLAUSES",
    "PowerScheduleConfig",
    "Schedule",
    "ScheduleSpec",
    "TableScheduleConfig",
    "WAIVE_CONVEX_COMBINATION",
    "WAIVE_NONEXPANSIVE_SEQUENCE",
    "power_schedule",
    "table_schedule",
    "validate_schedule",
    "xu_recurrence",
]
