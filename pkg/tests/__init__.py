"""Integration and performance tests for FactChecker."""
