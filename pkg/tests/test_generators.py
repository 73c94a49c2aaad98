from __future__ import annotations

import numpy as np
import pytest

from entropicpy.bench import (
    SystemSpec,
    exact_derivatives,
    simulate,
    system_from_metadata,
    truth_matrix,
)
from entropicpy.errors import (
    DivergenceError,
    InsufficientDataError,
    InvalidInputError,
    ShapeError,
)
from entropicpy.time_series import Mode, TimeSeries


@pytest.fixture
def lorenz() -> SystemSpec:
    return SystemSpec.create("lorenz")


def test_logistic_iterates() -> None:
    series = simulate(SystemSpec.create("logistic_map"), [0.3], 5)
    np.testing.assert_allclose(
        series.data[:, 0],
        [0.3, 0.84, 0.5376, 0.99434496, 0.02249224],
        rtol=1e-6,
    )
    assert series.mode == Mode.MAP
    assert series.dt is None
    assert series.var_names == ("x",)


def test_map_ignores_dt() -> None:
    series = simulate(SystemSpec.create("logistic_map"), [0.3], 5, dt=0.1)
    assert series.dt is None


def test_lorenz_step_halving(lorenz: SystemSpec) -> None:
    coarse = simulate(lorenz, [-8.0, 7.0, 27.0], 101, dt=0.01)
    fine = simulate(lorenz, [-8.0, 7.0, 27.0], 201, dt=0.005)
    assert np.max(np.abs(coarse.data - fine.data[::2])) < 1e-5


def test_truth_and_metadata(lorenz: SystemSpec) -> None:
    series = simulate(lorenz, [-8.0, 7.0, 27.0], 10, dt=0.01, seed=7)
    np.testing.assert_array_equal(series.truth, truth_matrix(lorenz))
    assert series.truth_degree == 2
    assert series.metadata == {
        "system": "lorenz",
        "params": {"sigma": 10.0, "rho": 28.0, "beta": 8.0 / 3.0},
        "adjacency": [],
        "seed": 7,
        "noise_sd": 0.0,
        "transient": 0,
    }
    cubic = simulate(lorenz, [-8.0, 7.0, 27.0], 10, dt=0.01, degree=3)
    assert cubic.truth is not None
    assert cubic.truth.shape == (20, 3)


def test_transient_is_dropped(lorenz: SystemSpec) -> None:
    full = simulate(lorenz, [-8.0, 7.0, 27.0], 30, dt=0.01)
    tail = simulate(lorenz, [-8.0, 7.0, 27.0], 20, dt=0.01, transient=10)
    np.testing.assert_array_equal(tail.data, full.data[10:])


def test_noise_is_reproducible(lorenz: SystemSpec) -> None:
    clean = simulate(lorenz, [-8.0, 7.0, 27.0], 500, dt=0.01)
    first = simulate(lorenz, [-8.0, 7.0, 27.0], 500, 0.01, 0.1, seed=3)
    again = simulate(lorenz, [-8.0, 7.0, 27.0], 500, 0.01, 0.1, seed=3)
    other = simulate(lorenz, [-8.0, 7.0, 27.0], 500, 0.01, 0.1, seed=4)
    np.testing.assert_array_equal(first.data, again.data)
    assert not np.array_equal(first.data, other.data)
    relative = (first.data - clean.data).std(axis=0) / clean.data.std(axis=0)
    np.testing.assert_allclose(relative, 0.1, rtol=0.15)


def test_simulate_errors(lorenz: SystemSpec) -> None:
    with pytest.raises(ShapeError):
        simulate(lorenz, [1.0, 2.0], 10, dt=0.01)
    with pytest.raises(InsufficientDataError):
        simulate(lorenz, [1.0, 2.0, 3.0], 1, dt=0.01)
    with pytest.raises(InvalidInputError):
        simulate(lorenz, [1.0, 2.0, 3.0], 10)
    with pytest.raises(InvalidInputError):
        simulate(lorenz, [1.0, 2.0, 3.0], 10, dt=0.01, noise_sd=-1.0)
    with pytest.raises(InvalidInputError):
        simulate(lorenz, [1.0, 2.0, 3.0], 10, dt=0.01, transient=-1)


def test_divergence_names_the_step() -> None:
    spec = SystemSpec.create("logistic_map", {"r": 10.0})
    with pytest.raises(DivergenceError, match="step"):
        simulate(spec, [0.5], 100)


def test_exact_derivatives(lorenz: SystemSpec) -> None:
    derivatives = exact_derivatives(lorenz, np.array([[1.0, 2.0, 3.0]]))
    np.testing.assert_allclose(derivatives, [[10.0, 23.0, -6.0]])
    with pytest.raises(ShapeError):
        exact_derivatives(lorenz, np.ones((2, 2)))


def test_system_from_metadata() -> None:
    spec = SystemSpec.create(
        "coupled_logistic_network", {"node_count": 4}, [(0, 1), (2, 3)]
    )
    series = simulate(spec, [0.2, 0.3, 0.4, 0.5], 10)
    assert system_from_metadata(series) == spec
    with pytest.raises(InvalidInputError):
        system_from_metadata(TimeSeries.from_array([[1.0], [2.0]], 0.1))
