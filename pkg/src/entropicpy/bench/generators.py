from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from entropicpy._typing import Matrix
from entropicpy.bench.systems import (
    SystemSpec,
    system_function,
    truth_matrix,
)
from entropicpy.constants import (
    DT_ERROR,
    NOISE_ERROR,
    SERIES_LENGTH_ERROR,
    STATE_LENGTH_ERROR,
    SYSTEM_METADATA_ERROR,
    TRANSIENT_ERROR,
)
from entropicpy.errors import (
    InsufficientDataError,
    InvalidInputError,
    ShapeError,
)
from entropicpy.integrators import iterate_map, rk4_trajectory
from entropicpy.linalg import as_matrix
from entropicpy.time_series import Mode, TimeSeries


def simulate(
    spec: SystemSpec,
    x0: Sequence[float],
    N: int,  # noqa: N803
    dt: float | None = None,
    noise_sd: float = 0.0,
    seed: int = 0,
    transient: int = 0,
    degree: int | None = None,
) -> TimeSeries:
    """
    Generates a benchmark trajectory.

    Flows are integrated with fixed step RK4 and maps are iterated. The first
    transient steps are integrated and dropped. Observation noise of standard
    deviation noise_sd times the standard deviation of every channel is
    added with a generator seeded by seed.

    Args:
        spec (SystemSpec): The system.
        x0 (Sequence[float]): Initial condition (before the transient).
        N (int): Number of observations.
        dt (float | None): Step size of flows; ignored for maps.
        noise_sd (float): Relative observation noise level.
        seed (int): Seed of the noise.
        transient (int): Number of steps to drop.
        degree (int | None): Library degree of the attached truth matrix
            (the system's degree by default).

    Returns:
        TimeSeries: The observations with their ground truth.

    Raises:
        ShapeError: If x0 does not have spec.dims entries.
        InsufficientDataError: If N < 2.
        InvalidInputError: If dt is missing or not positive for a flow, or
            noise_sd or transient is negative.
        DivergenceError: If the trajectory blows up.
    """
    start = np.asarray(x0, dtype=np.float64)
    if start.shape != (spec.dims,):
        raise ShapeError(
            STATE_LENGTH_ERROR.format(got=start.size, expected=spec.dims)
        )
    if N < 2:  # noqa: PLR2004
        raise InsufficientDataError(SERIES_LENGTH_ERROR)
    if noise_sd < 0:
        raise InvalidInputError(NOISE_ERROR)
    if transient < 0:
        raise InvalidInputError(TRANSIENT_ERROR)

    function = system_function(spec)
    steps = transient + N - 1
    if spec.kind == Mode.MAP:
        dt = None
        trajectory = iterate_map(function, start, steps)
    else:
        if dt is None or dt <= 0:
            raise InvalidInputError(DT_ERROR)
        trajectory = rk4_trajectory(function, start, steps, dt)
    data = trajectory[transient:]

    if noise_sd > 0:
        generator = np.random.default_rng(seed)
        scale = noise_sd * data.std(axis=0)
        data = data + scale * generator.standard_normal(data.shape)

    degree = spec.degree if degree is None else degree
    return TimeSeries(
        data,
        dt=dt,
        mode=spec.kind,
        var_names=spec.var_names,
        truth=truth_matrix(spec, degree),
        truth_degree=degree,
        metadata={
            "system": spec.name.value,
            "params": dict(spec.params),
            "adjacency": [list(edge) for edge in spec.adjacency],
            "seed": seed,
            "noise_sd": noise_sd,
            "transient": transient,
        },
    )


def exact_derivatives(spec: SystemSpec, states: Matrix) -> Matrix:
    """
    Evaluates the true vector field (or map) of the system on every row.

    Raises:
        ShapeError: If the states do not have spec.dims columns.
    """
    data = as_matrix(states, "states")
    if data.shape[1] != spec.dims:
        raise ShapeError(
            STATE_LENGTH_ERROR.format(got=data.shape[1], expected=spec.dims)
        )
    function = system_function(spec)
    return np.array([function(row) for row in data])


def system_from_metadata(X: TimeSeries) -> SystemSpec:  # noqa: N803
    """
    Recreates the system a simulated series came from.

    Raises:
        InvalidInputError: If the series has no system metadata.
    """
    if "system" not in X.metadata:
        raise InvalidInputError(SYSTEM_METADATA_ERROR)
    adjacency = X.metadata.get("adjacency") or None
    return SystemSpec.create(
        X.metadata["system"],
        X.metadata.get("params"),
        None if adjacency is None else [tuple(edge) for edge in adjacency],
    )
