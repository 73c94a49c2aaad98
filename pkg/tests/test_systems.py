from __future__ import annotations

import numpy as np
import pytest

from entropicpy.basis import evaluate_terms, polynomial_terms
from entropicpy.bench import (
    SystemName,
    SystemSpec,
    default_initial_condition,
    library_size_report,
    simulate,
    system_function,
    truth_matrix,
    truth_polynomials,
)
from entropicpy.bench.systems import adjacency_matrix, ring_adjacency
from entropicpy.errors import InvalidInputError
from entropicpy.time_series import Mode

ALL_SYSTEMS = [
    SystemSpec.create("lorenz"),
    SystemSpec.create("rossler"),
    SystemSpec.create("van_der_pol"),
    SystemSpec.create("logistic_map"),
    SystemSpec.create(
        "coupled_logistic_network", {"node_count": 5, "coupling": 0.2}
    ),
    SystemSpec.create(
        "coupled_lorenz_network",
        {"node_count": 3, "coupling": 0.5},
        [(0, 1), (1, 2)],
    ),
]


def test_dimensions() -> None:
    assert [spec.dims for spec in ALL_SYSTEMS] == [3, 3, 2, 1, 5, 9]
    assert [spec.kind for spec in ALL_SYSTEMS] == [
        Mode.FLOW,
        Mode.FLOW,
        Mode.FLOW,
        Mode.MAP,
        Mode.MAP,
        Mode.FLOW,
    ]
    assert SystemSpec.create("coupled_lorenz_network").dims == 30


def test_var_names() -> None:
    assert ALL_SYSTEMS[0].var_names == ("x", "y", "z")
    assert ALL_SYSTEMS[4].var_names == ("x1", "x2", "x3", "x4", "x5")
    assert ALL_SYSTEMS[5].var_names[:4] == ("x1", "y1", "z1", "x2")


def test_create_errors() -> None:
    with pytest.raises(InvalidInputError, match="unknown system"):
        SystemSpec.create("duffing")
    with pytest.raises(InvalidInputError):
        SystemSpec.create("lorenz", {"gamma": 1.0})
    with pytest.raises(InvalidInputError):
        SystemSpec.create("coupled_logistic_network", {"node_count": 1})
    with pytest.raises(InvalidInputError):
        SystemSpec.create(
            "coupled_logistic_network", {"node_count": 3}, [(0, 3)]
        )
    with pytest.raises(InvalidInputError):
        SystemSpec(SystemName.LORENZ, {}, 2, Mode.FLOW)


def test_parameter_override() -> None:
    spec = SystemSpec.create(SystemName.LORENZ, {"rho": 14.0})
    assert spec.params == {"sigma": 10.0, "rho": 14.0, "beta": 8.0 / 3.0}


def test_adjacency() -> None:
    assert ring_adjacency(3) == ((0, 1), (1, 2), (2, 0))
    np.testing.assert_array_equal(
        adjacency_matrix(3, [(0, 1), (2, 2)]),
        [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
    )


@pytest.mark.parametrize("spec", ALL_SYSTEMS, ids=lambda s: s.name.value)
def test_truth_reproduces_the_system(spec: SystemSpec) -> None:
    generator = np.random.default_rng(0)
    states = generator.uniform(-2.0, 2.0, (20, spec.dims))
    for degree in (spec.degree, spec.degree + 1):
        terms = tuple(polynomial_terms(spec.dims, degree))
        predicted = evaluate_terms(states, terms) @ truth_matrix(spec, degree)
        function = system_function(spec)
        expected = np.array([function(state) for state in states])
        np.testing.assert_allclose(predicted, expected, atol=1e-10)


def test_lorenz_truth() -> None:
    polynomials = truth_polynomials(SystemSpec.create("lorenz"))
    assert polynomials[0] == {(1, 0, 0): -10.0, (0, 1, 0): 10.0}
    assert sum(len(p) for p in polynomials) == 7
    truth = truth_matrix(SystemSpec.create("lorenz"))
    assert truth.shape == (10, 3)
    assert np.count_nonzero(truth) == 7


def test_truth_degree_error() -> None:
    with pytest.raises(InvalidInputError):
        truth_matrix(SystemSpec.create("van_der_pol"), 2)


def test_library_sizes() -> None:
    assert library_size_report() == {
        "kuramoto_sivashinsky_16": (16, 153),
        "coupled_logistic_network_100": (100, 5151),
        "coupled_lorenz_network_300": (300, 45451),
    }
    assert library_size_report(3, [SystemSpec.create("lorenz")]) == {
        "lorenz_3": (3, 20)
    }


def test_default_initial_conditions() -> None:
    for spec in ALL_SYSTEMS:
        x0 = default_initial_condition(spec)
        assert x0.shape == (spec.dims,)
    network = ALL_SYSTEMS[4]
    np.testing.assert_array_equal(
        default_initial_condition(network, 3),
        default_initial_condition(network, 3),
    )


def test_uncoupled_lorenz_network_is_isolated_nodes() -> None:
    network = SystemSpec.create(
        "coupled_lorenz_network", {"node_count": 2, "coupling": 0.0}
    )
    x0 = default_initial_condition(network)
    coupled = simulate(network, x0, 200, dt=0.01).data
    lorenz = SystemSpec.create("lorenz")
    for node in range(2):
        alone = simulate(lorenz, x0[3 * node : 3 * node + 3], 200, dt=0.01)
        np.testing.assert_allclose(
            coupled[:, 3 * node : 3 * node + 3], alone.data, rtol=1e-12
        )


def test_uncoupled_logistic_network_is_isolated_nodes() -> None:
    network = SystemSpec.create(
        "coupled_logistic_network", {"node_count": 3, "coupling": 0.0}
    )
    x0 = default_initial_condition(network)
    coupled = simulate(network, x0, 30).data
    logistic = SystemSpec.create("logistic_map")
    for node in range(3):
        alone = simulate(logistic, x0[node : node + 1], 30)
        np.testing.assert_allclose(coupled[:, [node]], alone.data, rtol=1e-12)
