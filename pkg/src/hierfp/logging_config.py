"""Centralized logging configuration for hierfp."""

import asyncio
import contextvars
import logging
import traceback
from datetime import datetime
from functools import wraps
from typing import Any, Callable

import numpy as np
from pythonjsonlogger import jsonlogger

from hierfp.core.interfaces import StageExecutionError

# Context variable for run tracing
run_id_var: contextvars.ContextVar[str] = contextvars.ContextVar(
    "run_id", default="N/A"
)

# Context variable for error tracking
error_context_var: contextvars.ContextVar[dict[str, Any] | None] = (
    contextvars.ContextVar("error_context", default=None)
)

PLAIN_FORMAT = "%(asctime)s | %(name)s | %(levelname)s | %(run_id)s | %(message)s"
JSON_FORMAT = "%(asctime)s %(name)s %(levelname)s %(run_id)s %(message)s"


class RunIdFilter(logging.Filter):
    """Filter to inject run_id context variable into log records."""

    def filter(self, record: logging.LogRecord) -> bool:
        """Add run_id to the log record."""
        record.run_id = run_id_var.get()
        return True


class RunIdLoggerAdapter(logging.LoggerAdapter):  # type: ignore[type-arg]
    """LoggerAdapter that injects run_id from context variable."""

    def process(self, msg: Any, kwargs: Any) -> tuple[Any, Any]:
        """Attach the current run_id to the record via the extra dict."""
        if "extra" not in kwargs:
            kwargs["extra"] = {}
        kwargs["extra"]["run_id"] = run_id_var.get()
        return msg, kwargs


def setup_logging(level: int = logging.INFO, json_format: bool = False) -> logging.Logger:
    """Initialize logging with structured format.

    Repeated calls replace the handler installed by the previous call instead
    of stacking a second one.
    """
    handler = logging.StreamHandler()
    formatter: logging.Formatter
    if json_format:
        formatter = jsonlogger.JsonFormatter(JSON_FORMAT)
    else:
        formatter = logging.Formatter(PLAIN_FORMAT)
    handler.setFormatter(formatter)
    handler.addFilter(RunIdFilter())
    handler.set_name("hierfp")

    logger = logging.getLogger("hierfp")
    for existing in list(logger.handlers):
        if existing.get_name() == "hierfp":
            logger.removeHandler(existing)
    logger.setLevel(level)
    logger.addHandler(handler)
    return logger


def get_logger(name: str) -> logging.LoggerAdapter:  # type: ignore[type-arg]
    """Get logger with automatic run_id injection."""
    if not name.startswith("hierfp"):
        name = f"hierfp.{name}"
    logger = logging.getLogger(name)

    if not any(isinstance(f, RunIdFilter) for f in logger.filters):
        logger.addFilter(RunIdFilter())

    return RunIdLoggerAdapter(logger, {})


def _sanitize_value(value: Any) -> Any:
    """Summarize a value for logging (arrays by shape, long sequences truncated)."""
    if isinstance(value, np.ndarray):
        return f"<ndarray shape={value.shape}>"
    if isinstance(value, dict):
        return {k: _sanitize_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)) and len(value) > 8:
        return f"<{type(value).__name__}: {len(value)} items>"
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return f"<{type(value).__name__}>"


def _extract_params(args: tuple[Any, ...], kwargs: dict[str, Any]) -> dict[str, Any]:
    """Extract call parameters, skipping ``self`` for methods."""
    params: dict[str, Any] = {}
    param_list = (
        list(args)[1:] if args and hasattr(args[0], "__dict__") else list(args)
    )

    for i, arg in enumerate(param_list):
        params[f"arg_{i}"] = _sanitize_value(arg)

    for key, value in kwargs.items():
        params[key] = _sanitize_value(value)

    return params


def _extract_traceback_summary(exception: BaseException) -> str:
    """Extract condensed traceback showing call chain."""
    tb_lines = traceback.format_exception(
        type(exception), exception, exception.__traceback__
    )
    return "".join(tb_lines[-5:])


def _wrap_failure(
    stage_name: str,
    func: Callable[..., Any],
    args: tuple[Any, ...],
    kwargs: dict[str, Any],
    error: Exception,
) -> StageExecutionError:
    wrapped_error = StageExecutionError(
        message=str(error),
        stage_name=stage_name,
        function_name=func.__qualname__,
        input_params=_extract_params(args, kwargs),
        original_exception=error,
    )
    error_context_var.set(
        {
            "stage": stage_name,
            "function": func.__qualname__,
            "error": wrapped_error,
            "traceback": _extract_traceback_summary(error),
        }
    )
    return wrapped_error


def log_stage(stage_name: str) -> Callable[[Callable[..., Any]], Callable[..., Any]]:
    """Decorator to log stage execution with timing."""

    def decorator(func: Callable[..., Any]) -> Callable[..., Any]:
        logger = get_logger(func.__module__)

        @wraps(func)
        async def async_wrapper(*args: Any, **kwargs: Any) -> Any:
            start_time = datetime.now()
            logger.info(f"Stage '{stage_name}' started")
            try:
                result = await func(*args, **kwargs)
            except StageExecutionError:
                raise
            except Exception as e:
                elapsed_ms = (datetime.now() - start_time).total_seconds() * 1000
                logger.error(
                    f"Stage '{stage_name}' failed: {e} (elapsed: {elapsed_ms:.2f}ms)",
                    exc_info=True,
                )
                raise _wrap_failure(stage_name, func, args, kwargs, e) from e
            elapsed_ms = (datetime.now() - start_time).total_seconds() * 1000
            logger.info(f"Stage '{stage_name}' completed (elapsed: {elapsed_ms:.2f}ms)")
            return result

        @wraps(func)
        def sync_wrapper(*args: Any, **kwargs: Any) -> Any:
            start_time = datetime.now()
            logger.info(f"Stage '{stage_name}' started")
            try:
                result = func(*args, **kwargs)
            except StageExecutionError:
                raise
            except Exception as e:
                elapsed_ms = (datetime.now() - start_time).total_seconds() * 1000
                logger.error(
                    f"Stage '{stage_name}' failed: {e} (elapsed: {elapsed_ms:.2f}ms)",
                    exc_info=True,
                )
                raise _wrap_failure(stage_name, func, args, kwargs, e) from e
            elapsed_ms = (datetime.now() - start_time).total_seconds() * 1000
            logger.info(f"Stage '{stage_name}' completed (elapsed: {elapsed_ms:.2f}ms)")
            return result

        return async_wrapper if asyncio.iscoroutinefunction(func) else sync_wrapper

    return decorator
