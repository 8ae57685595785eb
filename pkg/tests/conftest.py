"""Pytest configuration for integration and performance tests."""

from dotenv import load_dotenv

# Load environment variables from .env file before any tests run
load_dotenv()
