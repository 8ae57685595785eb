"""Abstract base interfaces and error types for hierfp components."""

from abc import ABC, abstractmethod
from typing import Any

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict


class HierFPError(Exception):
    """Root of every error raised by hierfp."""

    pass


class UsageError(HierFPError, ValueError):
    """Raised when an operation is called outside its preconditions."""

    pass


class ConstantsError(UsageError):
    """Raised when the constants (mu, rho, gamma, L, eta) are inadmissible."""

    pass


class ConfigError(UsageError):
    """Raised when an experiment config does not match the schema."""

    pass


class ProjectionNotConvergedError(HierFPError):
    """Raised when Dykstra's algorithm hits its sweep cap."""

    def __init__(self, sweeps: int, last_change: float):
        self.sweeps = sweeps
        self.last_change = last_change
        super().__init__(
            f"projection did not converge after {sweeps} sweeps "
            f"(last change {last_change:.3e}); the intersection may be empty "
            "or ill-conditioned"
        )


class DivergenceError(HierFPError):
    """Raised when an iterate or intermediate value stops being finite."""

    def __init__(self, step_index: int, quantity: str):
        self.step_index = step_index
        self.quantity = quantity
        # Filled in by the solver so callers can persist what ran before the failure.
        self.partial_trace: Any = None
        super().__init__(f"divergence at step {step_index}: non-finite {quantity}")


class OracleNotConvergedError(HierFPError):
    """Raised when the projected-gradient oracle exhausts its iteration budget."""

    def __init__(self, iterations: int, last_change: float):
        self.iterations = iterations
        self.last_change = last_change
        super().__init__(
            f"oracle did not converge after {iterations} iterations "
            f"(last change {last_change:.3e})"
        )


class StageExecutionError(HierFPError):
    """Exception with harness stage execution context."""

    def __init__(
        self,
        message: str,
        stage_name: str,
        function_name: str,
        input_params: dict[str, Any],
        original_exception: Exception,
    ):
        self.message = message
        self.stage_name = stage_name
        self.function_name = function_name
        self.input_params = input_params
        self.original_exception = original_exception
        super().__init__(message)


class BaseConvexSet(BaseModel, ABC):
    """Abstract base for closed convex sets with an exact metric projection."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    @property
    @abstractmethod
    def dim(self) -> int:
        """Dimension of the ambient space."""
        pass

    @property
    def is_bounded(self) -> bool:
        """Whether the set is bounded (usable as a sampling region)."""
        return False

    @abstractmethod
    def project(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        """Return the nearest point of the set to x."""
        pass

    @abstractmethod
    def contains(self, x: NDArray[np.float64], tol: float = 0.0) -> bool:
        """True iff x violates every defining constraint by at most tol."""
        pass

    def bounding_box(self) -> "BaseConvexSet | None":
        """An axis-aligned box containing the set, or None when unbounded."""
        return None

    def diameter(self) -> float:
        """Diameter of the set (an upper bound for intersections)."""
        raise UsageError(f"{type(self).__name__} is unbounded and has no diameter")

    def sample(self, rng: np.random.Generator, count: int) -> NDArray[np.float64]:
        """Draw count points uniformly from the set, shape (count, dim)."""
        raise UsageError(
            f"uniform sampling needs a bounded Box or Ball, got {type(self).__name__}"
        )
