"""Unit tests for logging configuration module."""

import asyncio
import json
import logging

import numpy as np
import pytest

from hierfp.core.interfaces import StageExecutionError
from hierfp.logging_config import (
    _sanitize_value,
    error_context_var,
    get_logger,
    log_stage,
    run_id_var,
    setup_logging,
)

# ============================================================================
# CONTEXT VARIABLE INJECTION TESTS
# ============================================================================


class TestContextVariableInjection:
    """Tests for run_id_var context variable functionality."""

    def test_context_var_default_value(self):
        assert run_id_var.get() == "N/A"

    def test_get_logger_injects_run_id(self, caplog):
        run_id_var.set("run-abc")
        logger = get_logger("test_module")

        with caplog.at_level(logging.INFO):
            logger.info("Test message")

        assert "run-abc" in caplog.text
        assert "Test message" in caplog.text

    def test_logger_name_is_namespaced(self, caplog):
        logger = get_logger("named_module")

        with caplog.at_level(logging.INFO):
            logger.info("Message from named logger")

        assert "hierfp.named_module" in caplog.text

    def test_hierfp_names_are_not_prefixed_twice(self):
        logger = get_logger("hierfp.solver.engine")
        assert logger.logger.name == "hierfp.solver.engine"

    def test_multiple_loggers_share_context(self, caplog):
        run_id_var.set("shared-run")

        with caplog.at_level(logging.INFO):
            get_logger("module1").info("one")
            get_logger("module2").info("two")

        assert caplog.text.count("shared-run") == 2

    async def test_context_visible_in_worker_threads(self):
        run_id_var.set("thread-run")
        assert await asyncio.to_thread(run_id_var.get) == "thread-run"


# ============================================================================
# DECORATOR TESTS
# ============================================================================


class TestLogStage:
    """Tests for the @log_stage decorator."""

    def test_sync_decorator_logs_start_and_completion(self, caplog):
        @log_stage("Sync Stage")
        def task():
            return "done"

        with caplog.at_level(logging.INFO):
            assert task() == "done"

        assert "Stage 'Sync Stage' started" in caplog.text
        assert "Stage 'Sync Stage' completed" in caplog.text
        assert "ms" in caplog.text

    async def test_async_decorator_logs_start_and_completion(self, caplog):
        @log_stage("Async Stage")
        async def task():
            await asyncio.sleep(0)
            return 7

        with caplog.at_level(logging.INFO):
            assert await task() == 7

        assert "Stage 'Async Stage' started" in caplog.text
        assert "Stage 'Async Stage' completed" in caplog.text

    def test_sync_failure_is_wrapped(self, caplog):
        @log_stage("Failing Stage")
        def task(x):
            raise RuntimeError("boom")

        with caplog.at_level(logging.ERROR):
            with pytest.raises(StageExecutionError) as exc_info:
                task(3)

        err = exc_info.value
        assert err.stage_name == "Failing Stage"
        assert isinstance(err.original_exception, RuntimeError)
        assert err.input_params == {"arg_0": 3}
        assert "Stage 'Failing Stage' failed: boom" in caplog.text
        assert error_context_var.get()["stage"] == "Failing Stage"

    async def test_async_failure_is_wrapped(self):
        @log_stage("Async Failing")
        async def task():
            raise ValueError("bad input")

        with pytest.raises(StageExecutionError, match="bad input"):
            await task()

    def test_nested_stage_error_is_not_rewrapped(self):
        @log_stage("Inner")
        def inner():
            raise KeyError("k")

        @log_stage("Outer")
        def outer():
            inner()

        with pytest.raises(StageExecutionError) as exc_info:
            outer()

        assert exc_info.value.stage_name == "Inner"

    def test_array_parameters_are_summarized(self):
        @log_stage("Array Stage")
        def task(x):
            raise RuntimeError("fail")

        with pytest.raises(StageExecutionError) as exc_info:
            task(np.zeros((3, 2)))

        assert exc_info.value.input_params["arg_0"] == "<ndarray shape=(3, 2)>"


class TestSanitizeValue:
    def test_long_sequences_are_truncated(self):
        assert _sanitize_value(list(range(20))) == "<list: 20 items>"

    def test_short_sequences_become_type_tags(self):
        assert _sanitize_value((1.0, 2.0)) == "<tuple>"

    def test_scalars_pass_through(self):
        assert _sanitize_value(1.5) == 1.5
        assert _sanitize_value(None) is None


# ============================================================================
# SETUP TESTS
# ============================================================================


class TestSetupLogging:
    def test_setup_logging_installs_one_handler(self):
        setup_logging()
        logger = setup_logging(level=logging.DEBUG)

        named = [h for h in logger.handlers if h.get_name() == "hierfp"]
        assert logger.name == "hierfp"
        assert len(named) == 1
        assert logger.level == logging.DEBUG

    def test_json_format_emits_json_lines(self, capsys):
        logger = setup_logging(json_format=True)
        run_id_var.set("json-run")

        get_logger("json_test").info("structured", extra={"steps": 5})

        line = capsys.readouterr().err.strip().splitlines()[-1]
        record = json.loads(line)
        assert record["message"] == "structured"
        assert record["run_id"] == "json-run"
        assert record["steps"] == 5
        setup_logging()
        assert len([h for h in logger.handlers if h.get_name() == "hierfp"]) == 1
