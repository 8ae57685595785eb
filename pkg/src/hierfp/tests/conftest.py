"""Pytest configuration and fixtures for hierfp tests."""

import logging

import pytest
from dotenv import load_dotenv

from hierfp.logging_config import PLAIN_FORMAT, RunIdFilter, run_id_var

load_dotenv()


def pytest_configure(config):
    """Add the run id to every root handler pytest installs."""
    formatter = logging.Formatter(PLAIN_FORMAT)
    for handler in logging.root.handlers:
        handler.setFormatter(formatter)
        if not any(isinstance(f, RunIdFilter) for f in handler.filters):
            handler.addFilter(RunIdFilter())


@pytest.fixture(autouse=True)
def setup_logging_for_tests(caplog):
    """Capture everything with the run id in caplog.text."""
    caplog.handler.addFilter(RunIdFilter())
    caplog.handler.setFormatter(logging.Formatter(PLAIN_FORMAT))
    caplog.set_level(logging.DEBUG)
    run_id_var.set("N/A")
    yield caplog
