"""Tests for the error hierarchy and the convex set base class."""

import numpy as np
import pytest

from hierfp.core.interfaces import (
    BaseConvexSet,
    ConfigError,
    ConstantsError,
    DivergenceError,
    HierFPError,
    OracleNotConvergedError,
    ProjectionNotConvergedError,
    StageExecutionError,
    UsageError,
)


class TestErrorHierarchy:
    @pytest.mark.parametrize("error_type", [ConstantsError, ConfigError])
    def test_config_errors_are_usage_errors(self, error_type):
        assert issubclass(error_type, UsageError)
        assert issubclass(error_type, ValueError)

    @pytest.mark.parametrize(
        "error",
        [
            ProjectionNotConvergedError(10, 1e-3),
            DivergenceError(4, "y"),
            OracleNotConvergedError(100, 1e-5),
        ],
    )
    def test_runtime_errors_are_not_usage_errors(self, error):
        assert isinstance(error, HierFPError)
        assert not isinstance(error, UsageError)

    def test_divergence_message(self):
        err = DivergenceError(17, "T_n y")
        assert str(err) == "divergence at step 17: non-finite T_n y"
        assert err.partial_trace is None

    def test_projection_message(self):
        assert "projection did not converge" in str(ProjectionNotConvergedError(5, 0.1))

    def test_oracle_message(self):
        assert "oracle did not converge" in str(OracleNotConvergedError(5, 0.1))

    def test_stage_error_keeps_original(self):
        cause = UsageError("bad")
        err = StageExecutionError("bad", "Stage", "f", {}, cause)
        assert err.original_exception is cause
        assert err.stage_name == "Stage"


class _Point(BaseConvexSet):
    @property
    def dim(self):
        return 1

    def project(self, x):
        return np.zeros(1)

    def contains(self, x, tol=0.0):
        return abs(float(x[0])) <= tol


class TestBaseConvexSet:
    def test_cannot_instantiate_abstract_base(self):
        with pytest.raises(TypeError):
            BaseConvexSet()

    def test_defaults_for_unbounded_sets(self):
        s = _Point()
        assert not s.is_bounded
        assert s.bounding_box() is None
        with pytest.raises(UsageError, match="unbounded"):
            s.diameter()
        with pytest.raises(UsageError, match="uniform sampling"):
            s.sample(np.random.default_rng(0), 3)
