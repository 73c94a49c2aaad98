from __future__ import annotations

import numpy as np
import pytest

from entropicpy.basis import TermDescriptor, polynomial_terms
from entropicpy.bench import (
    SystemSpec,
    exact_derivatives,
    simulate,
    truth_matrix,
)
from entropicpy.entropic_regression import erfit
from entropicpy.errors import InvalidInputError, ShapeError
from entropicpy.estimators import EstimatorConfig
from entropicpy.model import (
    ERTrace,
    FittedModel,
    Stage,
    TraceRecord,
    evaluate_model,
    integrate_model,
    model_equations,
    vector_field,
)
from entropicpy.support import EMPTY_SUPPORT, SupportSet
from entropicpy.time_series import Mode


def linear_model(coefficient: float = 2.0) -> FittedModel:
    # dx1/dt = coefficient * x1, dx2/dt = 0
    terms = tuple(polynomial_terms(2, 1))
    beta = np.zeros((3, 2))
    beta[1, 0] = coefficient
    return FittedModel(beta, (SupportSet([1]), EMPTY_SUPPORT), terms)


def lorenz_model() -> FittedModel:
    spec = SystemSpec.create("lorenz")
    beta = truth_matrix(spec)
    supports = tuple(
        SupportSet(np.nonzero(beta[:, j])[0]) for j in range(3)
    )
    return FittedModel(
        beta,
        supports,
        tuple(polynomial_terms(3, 2)),
        var_names=spec.var_names,
        degree=2,
    )


def test_fitted_model_defaults() -> None:
    model = linear_model()
    assert model.dims == 2
    assert model.var_names == ("x1", "x2")
    assert model.nonzero_count == 1
    assert model.mode == Mode.FLOW


def test_fitted_model_shape_error() -> None:
    with pytest.raises(ShapeError):
        FittedModel(np.zeros((2, 2)), (), tuple(polynomial_terms(2, 1)))
    with pytest.raises(ShapeError):
        FittedModel(np.zeros(3), (), tuple(polynomial_terms(2, 1)))


def test_evaluate_single_term() -> None:
    np.testing.assert_array_equal(
        evaluate_model(linear_model(), [3.0, 5.0]), [6.0, 0.0]
    )


def test_evaluate_zero_model() -> None:
    model = linear_model(0.0)
    assert not evaluate_model(model, [3.0, 5.0]).any()


def test_evaluate_batch() -> None:
    states = np.array([[1.0, 2.0], [3.0, 5.0]])
    np.testing.assert_array_equal(
        evaluate_model(linear_model(), states), [[2.0, 0.0], [6.0, 0.0]]
    )


def test_evaluate_shape_error() -> None:
    with pytest.raises(ShapeError):
        evaluate_model(linear_model(), [1.0, 2.0, 3.0])


def test_vector_field_ignores_time() -> None:
    f = vector_field(linear_model())
    np.testing.assert_array_equal(f(0.0, np.array([3.0, 5.0])), [6.0, 0.0])
    np.testing.assert_array_equal(f(7.5, np.array([3.0, 5.0])), [6.0, 0.0])


def test_integrate_linear_flow() -> None:
    trajectory = integrate_model(linear_model(-1.0), [1.0, 4.0], 1.0, 0.01)
    assert trajectory.shape == (101, 2)
    assert trajectory[-1, 0] == pytest.approx(np.exp(-1.0), rel=1e-9)
    assert np.all(trajectory[:, 1] == 4.0)


def test_integrate_map() -> None:
    terms = tuple(polynomial_terms(1, 2))
    model = FittedModel(
        np.array([[0.0], [4.0], [-4.0]]),
        (SupportSet([1, 2]),),
        terms,
        mode=Mode.MAP,
    )
    trajectory = integrate_model(model, [0.3], 3)
    np.testing.assert_allclose(
        trajectory[:, 0], [0.3, 0.84, 0.5376, 0.99434496]
    )


def test_integrate_errors() -> None:
    with pytest.raises(InvalidInputError):
        integrate_model(linear_model(), [1.0, 1.0], -1.0)
    with pytest.raises(ShapeError):
        integrate_model(linear_model(), [1.0], 1.0)


def test_true_lorenz_model_shadows_the_system() -> None:
    spec = SystemSpec.create("lorenz")
    series = simulate(spec, [-8.0, 7.0, 27.0], 101, dt=0.01)
    trajectory = integrate_model(lorenz_model(), [-8.0, 7.0, 27.0], 1.0, 0.01)
    assert np.max(np.abs(trajectory - series.data)) < 1e-2


def test_fitted_lorenz_model_shadows_the_system() -> None:
    spec = SystemSpec.create("lorenz")
    series = simulate(spec, [-8.0, 7.0, 27.0], 2000, dt=0.01)
    model = erfit(
        series,
        EstimatorConfig(shuffle_count=30),
        2,
        derivatives=exact_derivatives(spec, series.data),
    )
    trajectory = integrate_model(model, series.data[0], 1.0, 0.01)
    assert trajectory.shape == (101, 3)
    assert np.max(np.abs(trajectory - series.data[:101])) < 1e-2


def test_model_equations() -> None:
    assert model_equations(linear_model()) == ["dx1/dt = 2*x1", "dx2/dt = 0"]
    assert model_equations(linear_model(-0.5), ["u", "v"]) == [
        "du/dt = -0.5*u",
        "dv/dt = 0",
    ]
    assert model_equations(lorenz_model()) == [
        "dx/dt = -10*x + 10*y",
        "dy/dt = 28*x - 1*y - 1*x*z",
        "dz/dt = -2.66667*z + 1*x*y",
    ]


def test_map_equations_and_labels() -> None:
    model = FittedModel(
        np.array([[1.5], [-2.0]]),
        (SupportSet([0, 1]),),
        (TermDescriptor(label="sin(x)"), TermDescriptor(label="cos(x)")),
        mode=Mode.MAP,
        var_names=("x",),
    )
    assert model_equations(model) == ["x[n+1] = 1.5*sin(x) - 2*cos(x)"]


def test_trace_concatenation() -> None:
    forward = ERTrace(
        (TraceRecord(Stage.FORWARD, 1, 0.5, 0.1, False, (1,)),),
        full_information=2.0,
    )
    backward = ERTrace(
        (TraceRecord(Stage.BACKWARD, 1, 0.5, 0.1, True, (1,)),)
    )
    trace = forward + backward
    assert len(trace.records) == 2
    assert trace.full_information == 2.0
    assert not trace.degenerate
    assert trace.stage(Stage.BACKWARD) == backward.records
