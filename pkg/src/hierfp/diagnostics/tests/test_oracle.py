"""Tests for the projected-gradient oracle and certificates."""

import logging

import numpy as np
import pytest

from hierfp.core.interfaces import OracleNotConvergedError, UsageError
from hierfp.diagnostics.oracle import (
    certify,
    default_tau,
    is_min_norm_problem,
    min_norm_check,
    oracle_solve,
    scale_check,
)
from hierfp.diagnostics.residuals import vi_residual
from hierfp.operators.constants import Constants
from hierfp.tests.fixtures import (  # noqa: F401
    p1_problem,
    p2_problem,
    p3_problem,
    p4_problem,
)

P2_SOLUTION = (8.0 / 3.0, -2.0 / 3.0)


class TestOracleSolve:
    def test_min_norm_line(self, p1_problem):
        result = oracle_solve(p1_problem)
        np.testing.assert_allclose(result.solution, (1.0, 1.0), atol=1e-9)
        assert result.method == "projected_gradient"

    def test_affine_vi(self, p2_problem):
        result = oracle_solve(p2_problem)
        np.testing.assert_allclose(result.solution, P2_SOLUTION, atol=1e-9)
        assert result.final_residual < 1e-11

    def test_singleton_fixed_set(self, p3_problem):
        result = oracle_solve(p3_problem)
        np.testing.assert_allclose(result.solution, (0.5, 0.5))
        assert result.iterations == 1

    def test_intersection_fixed_set(self, p4_problem):
        np.testing.assert_allclose(oracle_solve(p4_problem).solution, (0.0, 0.0), atol=1e-9)

    @pytest.mark.parametrize("name", ["p1_problem", "p2_problem", "p3_problem", "p4_problem"])
    def test_self_consistency(self, name, request):
        prob = request.getfixturevalue(name)
        solution = np.array(oracle_solve(prob).solution)
        assert vi_residual(solution, prob, 1000) <= 1e-6

    def test_default_tau(self):
        c = Constants(mu=0.25, rho=1.0, gamma=0.0, lip=2.0, eta=1.0)
        assert default_tau(c) == pytest.approx(1.0)

    def test_tau_out_of_range(self, p2_problem):
        with pytest.raises(UsageError, match="tau must lie"):
            oracle_solve(p2_problem, tau=5.0)

    def test_iteration_cap(self, p2_problem):
        with pytest.raises(OracleNotConvergedError, match="oracle did not converge"):
            oracle_solve(p2_problem, max_iter=1)


class TestChecks:
    def test_min_norm_detection(self, p1_problem, p2_problem):
        assert is_min_norm_problem(p1_problem)
        assert not is_min_norm_problem(p2_problem)

    def test_min_norm_check(self, p1_problem):
        assert min_norm_check(p1_problem, np.array([1.001, 0.999]))
        assert not min_norm_check(p1_problem, np.array([2.0, 0.0]))

    def test_min_norm_check_needs_specialization(self, p2_problem):
        with pytest.raises(UsageError, match="F = identity"):
            min_norm_check(p2_problem, np.array(P2_SOLUTION))

    def test_scaling_keeps_the_solution(self, p2_problem):
        assert scale_check(p2_problem, 0.5) is True

    def test_scaling_out_of_range_is_skipped(self, p2_problem):
        assert scale_check(p2_problem, 4.0) is None


class TestCertify:
    def test_certificate_at_min_norm_point(self, p1_problem, caplog):
        with caplog.at_level(logging.INFO):
            report = certify(p1_problem, np.array([1.0, 1.0]), samples=200, seed=3)
        assert report.min_norm_ok is True
        assert report.dist_oracle == pytest.approx(0.0, abs=1e-9)
        assert abs(report.vi_residual) <= 1e-9
        assert report.hierarchical_residual == pytest.approx(-report.vi_residual, abs=1e-12)
        assert (report.samples, report.seed) == (200, 3)
        assert "Certificate computed" in caplog.text

    def test_certificate_flags_a_wrong_point(self, p2_problem):
        report = certify(p2_problem, np.array([1.0, 1.0]), samples=200, seed=3)
        assert report.min_norm_ok is None
        assert report.vi_residual > 0.1
        assert report.dist_oracle > 1.0
