from __future__ import annotations

from collections.abc import Callable

import numpy as np

from entropicpy._typing import Matrix, Vector
from entropicpy.constants import DIVERGENCE_ERROR
from entropicpy.errors import DivergenceError

VectorField = Callable[[Vector], Vector]


def rk4_step(field: VectorField, state: Vector, dt: float) -> Vector:
    """
    One classical fourth order Runge-Kutta step of an autonomous field.
    """
    k1 = field(state)
    k2 = field(state + 0.5 * dt * k1)
    k3 = field(state + 0.5 * dt * k2)
    k4 = field(state + dt * k3)
    return state + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


def rk4_trajectory(
    field: VectorField, x0: Vector, steps: int, dt: float
) -> Matrix:
    """
    Integrates with fixed step RK4.

    Args:
        field (VectorField): Autonomous vector field.
        x0 (Vector): Initial condition.
        steps (int): Number of steps; the result has steps + 1 rows.
        dt (float): Step size.

    Returns:
        Matrix: The trajectory starting with x0.

    Raises:
        DivergenceError: If the state becomes non-finite.
    """
    trajectory = np.empty((steps + 1, len(x0)))
    trajectory[0] = x0
    for step in range(1, steps + 1):
        trajectory[step] = rk4_step(field, trajectory[step - 1], dt)
        if not np.all(np.isfinite(trajectory[step])):
            raise DivergenceError(DIVERGENCE_ERROR.format(step=step))
    return trajectory


def iterate_map(mapping: VectorField, x0: Vector, steps: int) -> Matrix:
    """
    Iterates a map; the result has steps + 1 rows starting with x0.

    Raises:
        DivergenceError: If the state becomes non-finite.
    """
    trajectory = np.empty((steps + 1, len(x0)))
    trajectory[0] = x0
    for step in range(1, steps + 1):
        trajectory[step] = mapping(trajectory[step - 1])
        if not np.all(np.isfinite(trajectory[step])):
            raise DivergenceError(DIVERGENCE_ERROR.format(step=step))
    return trajectory
