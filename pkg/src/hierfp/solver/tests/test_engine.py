"""Tests for the iteration engine."""

import logging
from dataclasses import replace

import numpy as np
import pytest

from hierfp.core.interfaces import DivergenceError, UsageError
from hierfp.harness.problems import build_problem, get_problem_config
from hierfp.operators.constants import Constants
from hierfp.operators.families import constant_residual_family
from hierfp.operators.library import (
    affine_spd,
    constant_map,
    identity_map,
    linear_map,
    projection_map,
)
from hierfp.operators.maps import (
    LipschitzMap,
    NearlyNonexpansiveFamily,
    NonexpansiveMap,
    Role,
)
from hierfp.operators.sequences import zero_sequence
from hierfp.schedules.schedule import power_schedule, table_schedule
from hierfp.sets import Ball, Box, Hyperplane, Simplex, WholeSpace
from hierfp.solver.engine import (
    RECORD_EVERY_STEP_UNTIL,
    ProblemSpec,
    SolverState,
    StoppingRule,
    run,
    step,
)
from hierfp.tests.fixtures import (  # noqa: F401
    default_schedule,
    min_norm_constants,
    min_norm_problem,
    p2_problem,
    short_stop,
)


def _exploding_family(at: int) -> NearlyNonexpansiveFamily:
    def eval_n(n, x):
        return x if n < at else x * np.nan

    return NearlyNonexpansiveFamily(
        eval_n=eval_n,
        a_seq=zero_sequence,
        limit_map=identity_map(2),
        common_fixed_set=WholeSpace(dimension=2),
        name="exploding",
    )


class TestProblemSpec:
    def test_nu_and_witness(self, min_norm_problem):
        assert min_norm_problem.nu == pytest.approx(1.0)
        np.testing.assert_allclose(min_norm_problem.witness, [1.0, 1.0])
        assert not min_norm_problem.witness.flags.writeable

    def test_inadmissible_constants(self, min_norm_problem):
        with pytest.raises(UsageError, match="0<μ<2η/L² violated"):
            replace(min_norm_problem, constants=Constants(mu=3.0, lip=1.0, eta=1.0))

    def test_v_constant_above_declared(self, min_norm_problem):
        with pytest.raises(UsageError, match="gamma"):
            replace(min_norm_problem, V=linear_map([[0.5, 0.0], [0.0, 0.5]]))

    def test_f_constants_checked(self, min_norm_problem):
        with pytest.raises(UsageError, match="declared"):
            replace(min_norm_problem, F=affine_spd([[1.0, 0.0], [0.0, 2.0]]))

    def test_family_needs_fixed_set(self, min_norm_problem):
        family = replace(min_norm_problem.family, common_fixed_set=None)
        with pytest.raises(UsageError, match="no common fixed-point set"):
            replace(min_norm_problem, family=family)

    def test_witness_must_be_fixed(self, min_norm_problem):
        with pytest.raises(UsageError, match="witness"):
            replace(min_norm_problem, witness=np.array([0.0, 0.0]))

    def test_fixed_set_dimension(self, min_norm_problem):
        family = constant_residual_family(projection_map(Hyperplane(a=(1.0,), b=0.0)))
        with pytest.raises(UsageError, match="R\\^1"):
            replace(min_norm_problem, family=family, witness=None)


class TestStep:
    def test_matches_hand_computation(self):
        prob = ProblemSpec(
            set_C=Box.cube(10.0, 2),
            S=projection_map(Ball(center=(0.0, 0.0), radius=3.0)),
            V=constant_map([1.0, 0.0]),
            F=affine_spd([[1.0, 0.0], [0.0, 2.0]]),
            family=constant_residual_family(projection_map(Hyperplane(a=(1.0, 1.0), b=2.0))),
            constants=Constants(mu=0.25, rho=1.0, gamma=0.0, lip=2.0, eta=1.0),
        )
        sch = table_schedule([0.5], [0.5])
        x = np.array([6.0, 8.0])
        nxt = step(SolverState(n=1, x=x, y=x), prob, sch)
        # y = (0.5 * (1.8, 2.4) + 0.5 * (6, 8)) = (3.9, 5.2); T y = (0.35, 1.65)
        np.testing.assert_allclose(nxt.y, [3.9, 5.2])
        ty = np.array([0.35, 1.65])
        expected = 0.5 * np.array([1.0, 0.0]) + ty - 0.5 * 0.25 * np.array([0.35, 3.3])
        np.testing.assert_allclose(nxt.x, expected)
        assert nxt.n == 2

    def test_stays_in_c(self, min_norm_problem, default_schedule):
        far = replace(min_norm_problem, set_C=Box.cube(0.5, 2))
        state = SolverState(n=1, x=np.zeros(2), y=np.zeros(2))
        for _ in range(20):
            state = step(state, far, default_schedule)
            assert far.set_C.contains(state.x, 1e-12)

    def test_divergence_names_quantity(self, min_norm_problem, default_schedule):
        prob = replace(min_norm_problem, family=_exploding_family(1), witness=None)
        with pytest.raises(DivergenceError, match="non-finite T_n y") as exc_info:
            step(SolverState(n=1, x=np.ones(2), y=np.ones(2)), prob, default_schedule)
        assert exc_info.value.step_index == 1

    def test_infinite_v_is_not_clamped_by_the_box(self, p2_problem):
        prob = replace(
            p2_problem,
            V=LipschitzMap(eval=lambda x: np.array([np.inf, 0.0]), gamma=0.0),
        )
        x = np.zeros(2)
        with pytest.raises(DivergenceError, match="non-finite x argument") as exc_info:
            step(SolverState(n=1, x=x, y=x), prob, power_schedule(0.7, 1.4))
        assert exc_info.value.quantity == "x argument"

    def test_infinite_s_is_caught_before_projection(
        self, min_norm_problem, default_schedule
    ):
        prob = replace(
            min_norm_problem,
            S=NonexpansiveMap(eval=lambda x: np.full(2, -np.inf)),
        )
        with pytest.raises(DivergenceError, match="non-finite y argument"):
            step(SolverState(n=1, x=np.ones(2), y=np.ones(2)), prob, default_schedule)

    def test_nan_never_reaches_a_simplex_projection(
        self, min_norm_problem, default_schedule
    ):
        prob = replace(
            min_norm_problem,
            set_C=Simplex(dimension=2),
            V=LipschitzMap(eval=lambda x: np.full(2, np.nan), gamma=0.0),
        )
        x = np.array([0.5, 0.5])
        with pytest.raises(DivergenceError, match="non-finite x argument"):
            step(SolverState(n=1, x=x, y=x), prob, default_schedule)


class TestRun:
    def test_fixed_length_run_approaches_solution(
        self, min_norm_problem, default_schedule, short_stop
    ):
        result = run(min_norm_problem, default_schedule, x1=np.array([5.0, -3.0]), stop=short_stop)
        assert result.steps == 2000
        assert not result.converged
        assert result.status == "not_converged"
        assert np.linalg.norm(result.x - np.array([1.0, 1.0])) < 0.1

    def test_recording_pattern(self, min_norm_problem, default_schedule):
        stop = StoppingRule(max_steps=1505, step_tol=0.0, residual_tol=0.0)
        result = run(min_norm_problem, default_schedule, stop=stop)
        ns = [row.n for row in result.trace.rows]
        assert ns[:RECORD_EVERY_STEP_UNTIL] == list(range(1, 1001))
        assert ns[RECORD_EVERY_STEP_UNTIL:] == list(range(1010, 1501, 10)) + [1505]

    def test_trace_columns(self, min_norm_problem, default_schedule):
        stop = StoppingRule(max_steps=5, step_tol=0.0, residual_tol=0.0)
        result = run(min_norm_problem, default_schedule, stop=stop)
        row = result.trace.rows[1]
        assert row.n == 2
        assert row.alpha == pytest.approx(2 ** -0.9)
        assert row.beta == pytest.approx(2 ** -1.8)
        assert row.a_n == 0.0
        assert not result.trace.has_vi
        assert not result.trace.has_oracle
        assert result.trace.column("step_norm").shape == (5,)

    def test_oracle_and_vi_hooks_fill_columns(self, min_norm_problem, default_schedule):
        stop = StoppingRule(max_steps=3, step_tol=0.0, residual_tol=0.0)
        result = run(
            min_norm_problem,
            default_schedule,
            stop=stop,
            oracle=np.array([1.0, 1.0]),
            vi_residual_fn=lambda x: 42.0,
        )
        assert result.trace.has_oracle
        assert result.trace.rows[-1].vi_residual == 42.0
        assert result.trace.rows[-1].dist_oracle == pytest.approx(
            np.linalg.norm(result.x - np.array([1.0, 1.0]))
        )

    def test_initial_point_is_projected(self, min_norm_problem, default_schedule):
        states = []
        stop = StoppingRule(max_steps=1, step_tol=0.0, residual_tol=0.0)
        run(min_norm_problem, default_schedule, x1=np.array([50.0, 0.0]), stop=stop,
            on_step=states.append)
        np.testing.assert_array_equal(states[0].x, [10.0, 0.0])
        assert [s.n for s in states] == [1, 2]

    def test_converges_at_a_fixed_point(self, default_schedule):
        # x = 0 solves the problem and is a fixed point of the iteration.
        prob = ProblemSpec(
            set_C=Box.cube(1.0, 2),
            S=identity_map(2),
            V=constant_map([0.0, 0.0]),
            F=identity_map(2, Role.MONOTONE),
            family=constant_residual_family(projection_map(Hyperplane(a=(1.0, 1.0), b=0.0))),
            constants=Constants(mu=1.0, rho=0.0, gamma=0.0, lip=1.0, eta=1.0),
        )
        result = run(prob, default_schedule, x1=np.zeros(2))
        assert result.converged
        assert result.steps == 1
        assert result.trace.rows[-1].fp_residual == 0.0

    def test_dimension_mismatch(self, min_norm_problem, default_schedule):
        with pytest.raises(UsageError, match="dimension mismatch"):
            run(min_norm_problem, default_schedule, x1=np.zeros(3))

    def test_divergence_keeps_partial_trace(self, min_norm_problem, default_schedule, caplog):
        prob = replace(min_norm_problem, family=_exploding_family(5), witness=None)
        with caplog.at_level(logging.ERROR):
            with pytest.raises(DivergenceError) as exc_info:
                run(prob, default_schedule)
        assert exc_info.value.step_index == 5
        assert [row.n for row in exc_info.value.partial_trace.rows] == [1, 2, 3, 4]
        assert "Run diverged" in caplog.text

    def test_not_converged_logs_warning(self, min_norm_problem, default_schedule, caplog):
        stop = StoppingRule(max_steps=10)
        with caplog.at_level(logging.WARNING):
            result = run(min_norm_problem, default_schedule, stop=stop)
        assert result.status == "not_converged"
        assert "Run finished" in caplog.text

    def test_deterministic(self, min_norm_problem, default_schedule, short_stop):
        a = run(min_norm_problem, default_schedule, stop=short_stop)
        b = run(min_norm_problem, default_schedule, stop=short_stop)
        np.testing.assert_array_equal(a.x, b.x)
        assert a.trace.rows == b.trace.rows

    @pytest.mark.parametrize("name", ["P1", "P2", "P3"])
    def test_step_norm_vanishes(self, name):
        config = get_problem_config(name)
        stop = StoppingRule(max_steps=10_000, step_tol=0.0, residual_tol=0.0)
        prob, sch = build_problem(config), config.schedule.build()
        result = run(prob, sch, x1=config.x1, stop=stop)
        step_norms = {row.n: row.step_norm for row in result.trace.rows}
        assert step_norms[10_000] * 5 <= step_norms[100]


class TestStoppingRule:
    def test_defaults(self):
        rule = StoppingRule()
        assert (rule.max_steps, rule.step_tol, rule.residual_tol) == (200_000, 1e-10, 1e-8)

    def test_rejects_zero_steps(self):
        with pytest.raises(ValueError):
            StoppingRule(max_steps=0)
