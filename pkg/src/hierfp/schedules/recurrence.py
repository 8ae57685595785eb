"""Trajectory of the scalar recurrence x_{n+1} = (1 - alpha_n) x_n + alpha_n beta_n.

With sum alpha_n = inf and limsup beta_n <= 0, the trajectory tends to zero;
tests use it as a reference trajectory for that limit.
"""

from collections.abc import Callable

from hierfp.core.interfaces import UsageError


def xu_recurrence(
    x1: float,
    alpha: Callable[[int], float],
    beta: Callable[[int], float],
    steps: int,
) -> list[float]:
    """Return [x_1, x_2, ..., x_{steps+1}]."""
    if x1 < 0:
        raise UsageError(f"x1 must be nonnegative, got {x1}")
    trajectory = [float(x1)]
    x = float(x1)
    for n in range(1, steps + 1):
        a = alpha(n)
        if not 0.0 <= a <= 1.0:
            raise UsageError(f"alpha_{n}={a!r} outside [0, 1]")
        x = (1.0 - a) * x + a * beta(n)
        trajectory.append(x)
    return trajectory
