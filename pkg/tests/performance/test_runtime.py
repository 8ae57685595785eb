"""Wall-clock budgets for the registry problems."""

import time

import numpy as np
import pytest

from hierfp.harness.problems import build_problem, get_problem_config
from hierfp.solver.engine import run

pytestmark = pytest.mark.performance

BUDGET_S = 10.0


@pytest.mark.parametrize("name", ["P1", "P2"])
def test_registry_problem_within_budget(name):
    config = get_problem_config(name)
    prob = build_problem(config)
    x1 = None if config.x1 is None else np.array(config.x1)
    start = time.perf_counter()
    result = run(prob, config.schedule.build(), x1=x1, stop=config.stopping)
    elapsed = time.perf_counter() - start
    assert elapsed < BUDGET_S, f"{name} took {elapsed:.2f}s for {result.steps} steps"


def test_trace_keeps_bounded_row_count():
    config = get_problem_config("P2")
    result = run(build_problem(config), config.schedule.build(), stop=config.stopping)
    # Every step up to 1000, then every 10th, plus the last.
    assert len(result.trace) <= 1000 + result.steps // 10 + 1
