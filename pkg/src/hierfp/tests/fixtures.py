"""Shared fixtures for component tests."""

import numpy as np
import pytest

from hierfp.harness.problems import build_problem, get_problem_config
from hierfp.operators.constants import Constants
from hierfp.operators.families import constant_residual_family
from hierfp.operators.library import identity_map, projection_map, zero_map
from hierfp.operators.maps import Role
from hierfp.schedules.schedule import power_schedule
from hierfp.sets import Box, Hyperplane
from hierfp.solver.engine import ProblemSpec, StoppingRule

LINE = Hyperplane(a=(1.0, 1.0), b=2.0)
BOX = Box.cube(10.0, 2)


@pytest.fixture
def line():
    """The line x1 + x2 = 2 in the plane."""
    return LINE


@pytest.fixture
def box():
    return BOX


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def min_norm_constants():
    return Constants(mu=1.0, rho=0.0, gamma=0.0, lip=1.0, eta=1.0)


@pytest.fixture
def min_norm_problem(min_norm_constants):
    """Minimum-norm point of the line; the solution is (1, 1)."""
    return ProblemSpec(
        set_C=BOX,
        S=zero_map(2, Role.NONEXPANSIVE),
        V=zero_map(2),
        F=identity_map(2, Role.MONOTONE),
        family=constant_residual_family(projection_map(LINE)),
        constants=min_norm_constants,
        sampling_box=BOX,
        name="min-norm",
    )


@pytest.fixture
def default_schedule():
    return power_schedule(0.9, 1.8)


@pytest.fixture
def short_stop():
    """Fixed-length runs: no early stopping."""
    return StoppingRule(max_steps=2000, step_tol=0.0, residual_tol=0.0)


@pytest.fixture
def p1_problem():
    return build_problem(get_problem_config("P1"))


@pytest.fixture
def p2_problem():
    return build_problem(get_problem_config("P2"))


@pytest.fixture
def p3_problem():
    return build_problem(get_problem_config("P3"))


@pytest.fixture
def p4_problem():
    return build_problem(get_problem_config("P4"))
