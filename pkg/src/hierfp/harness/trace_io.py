"""CSV persistence of iteration traces.

Floats are written with 17 significant digits so float64 values survive a
round trip exactly.
"""

import csv
from collections.abc import Mapping
from pathlib import Path
from typing import Optional

from hierfp.solver.engine import IterationTrace, TraceRow

BASE_COLUMNS = ["n", "alpha", "beta", "a_n", "step_norm", "fp_residual"]


def format_float(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.17g}"


def trace_columns(trace: IterationTrace) -> list[str]:
    columns = list(BASE_COLUMNS)
    if trace.has_vi:
        columns.append("vi_residual")
    if trace.has_oracle:
        columns.append("dist_oracle")
    return columns


def _row_cells(row: TraceRow, columns: list[str]) -> list[str]:
    return [
        str(row.n) if name == "n" else format_float(getattr(row, name))
        for name in columns
    ]


def write_trace(trace: IterationTrace, path: Path) -> Path:
    """Write one trace; certify columns appear only when they were filled."""
    path.parent.mkdir(parents=True, exist_ok=True)
    columns = trace_columns(trace)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in trace.rows:
            writer.writerow(_row_cells(row, columns))
    return path


def write_comparison(traces: Mapping[str, IterationTrace], path: Path) -> Path:
    """Per-variant step_norm and dist_oracle columns aligned by n.

    A variant that stopped early leaves its cells empty for later n.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    by_n = {name: {row.n: row for row in trace.rows} for name, trace in traces.items()}
    all_n = sorted({n for rows in by_n.values() for n in rows})
    header = ["n"]
    for name in traces:
        header += [f"{name}_step_norm", f"{name}_dist_oracle"]
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for n in all_n:
            cells = [str(n)]
            for name in traces:
                row = by_n[name].get(n)
                cells += [
                    format_float(row.step_norm if row else None),
                    format_float(row.dist_oracle if row else None),
                ]
            writer.writerow(cells)
    return path
