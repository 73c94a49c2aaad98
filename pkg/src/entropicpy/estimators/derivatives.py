# ruff: noqa: N803, N806
from __future__ import annotations

from typing import Union

import numpy as np

from entropicpy._typing import (
    DerivativeEstimator,
    Matrix,
    MatrixInput,
    Vector,
)
from entropicpy.constants import (
    CENTRAL_DIFFERENCE_SAMPLES_ERROR,
    MAP_MODE_SAMPLES_ERROR,
    MISSING_DERIVATIVES_ERROR,
    MISSING_DT_ERROR,
    ROW_MISMATCH_ERROR,
    TARGET_RESOLUTION_FACTOR,
)
from entropicpy.errors import (
    InsufficientDataError,
    InvalidInputError,
    ShapeError,
)
from entropicpy.estimators.config import DerivativeMethod
from entropicpy.linalg import as_matrix
from entropicpy.time_series import Mode, TimeSeries

SuppliedDerivative = Union[MatrixInput, DerivativeEstimator]


def central_difference(X: Matrix, dt: float) -> tuple[Matrix, Matrix]:
    """
    Second order central differences on the interior points.

    Args:
        X (Matrix): Uniformly sampled states (N x d), N >= 3.
        dt (float): Sampling interval.

    Returns:
        tuple[Matrix, Matrix]: The interior states X[1:-1] and their
            derivative estimates, both (N - 2) x d.
    """
    if X.shape[0] < 3:  # noqa: PLR2004
        raise InsufficientDataError(
            CENTRAL_DIFFERENCE_SAMPLES_ERROR.format(samples=X.shape[0])
        )
    return X[1:-1], (X[2:] - X[:-2]) / (2.0 * dt)


def fourth_order_difference(X: Matrix, dt: float) -> Matrix:
    """
    Fourth order central differences on the rows 2 .. N - 3.
    """
    return (X[:-4] - 8.0 * X[1:-3] + 8.0 * X[3:-1] - X[4:]) / (12.0 * dt)


def central_difference_error(X: Matrix, dt: float) -> Vector:
    """
    Estimates the root mean square error of central difference derivatives,
    per dimension.

    The gap between the second and the fourth order stencils on the same
    rows is dominated by the truncation error of the second order one, plus
    the observation noise both amplify. Fewer than 5 observations give
    zeros.

    Args:
        X (Matrix): Uniformly sampled states (N x d).
        dt (float): Sampling interval.

    Returns:
        Vector: One error estimate per dimension (d).
    """
    if X.shape[0] < 5:  # noqa: PLR2004
        return np.zeros(X.shape[1])
    second = (X[3:-1] - X[1:-3]) / (2.0 * dt)
    gap = second - fourth_order_difference(X, dt)
    return np.sqrt(np.mean(gap * gap, axis=0))


def next_state_targets(X: Matrix) -> tuple[Matrix, Matrix]:
    """
    Map mode targets: every state paired with its successor.
    """
    if X.shape[0] < 2:  # noqa: PLR2004
        raise InsufficientDataError(
            MAP_MODE_SAMPLES_ERROR.format(samples=X.shape[0])
        )
    return X[:-1], X[1:]


def estimate_derivative(
    X: TimeSeries,
    method: DerivativeMethod = DerivativeMethod.CENTRAL_DIFFERENCE,
    supplied: SuppliedDerivative | None = None,
) -> tuple[Matrix, Matrix]:
    """
    Computes the regression targets of a time series.

    In flow mode these are derivative estimates, in map mode the next states.
    A precomputed derivative matrix (same number of rows as X, nothing is
    trimmed) or a callable (X, dt) -> (X used, X dot) can be supplied.

    Args:
        X (TimeSeries): The observed trajectory.
        method (DerivativeMethod): How to obtain the targets; map mode series
            always use next states.
        supplied (SuppliedDerivative | None): Derivatives or derivative
            estimator for DerivativeMethod.USER_SUPPLIED.

    Returns:
        tuple[Matrix, Matrix]: The states the targets belong to and the
            targets, with equal numbers of rows.

    Raises:
        InsufficientDataError: If there are too few observations.
        InvalidInputError: If dt is missing or nothing was supplied for a
            user supplied method.
        ShapeError: If supplied derivatives do not match X.
    """
    if X.mode == Mode.MAP or method == DerivativeMethod.NONE_MAP_MODE:
        return next_state_targets(X.data)

    if method == DerivativeMethod.USER_SUPPLIED:
        if supplied is None:
            raise InvalidInputError(MISSING_DERIVATIVES_ERROR)
        if callable(supplied):
            if X.dt is None:
                raise InvalidInputError(MISSING_DT_ERROR)
            states, derivatives = supplied(X.data, X.dt)
            states = as_matrix(states, "states")
        else:
            states, derivatives = X.data, supplied
        derivatives = as_matrix(derivatives, "derivatives")
        if derivatives.shape != states.shape:
            raise ShapeError(
                ROW_MISMATCH_ERROR.format(
                    left="states",
                    left_rows=states.shape[0],
                    right="derivatives",
                    right_rows=derivatives.shape[0],
                )
            )
        return states, derivatives

    if X.dt is None:
        raise InvalidInputError(MISSING_DT_ERROR)
    return central_difference(X.data, X.dt)


def derivative_method_for(
    X: TimeSeries, supplied: SuppliedDerivative | None
) -> DerivativeMethod:
    """
    Picks the method implied by the series and the supplied derivatives.
    """
    if X.mode == Mode.MAP:
        return DerivativeMethod.NONE_MAP_MODE
    if supplied is not None:
        return DerivativeMethod.USER_SUPPLIED
    return DerivativeMethod.CENTRAL_DIFFERENCE


def target_resolution(X: TimeSeries, method: DerivativeMethod) -> Vector:
    """
    How closely a model can be asked to reproduce the regression targets,
    as a root mean square per dimension.

    Central difference targets carry a truncation error that is a smooth
    function of the state, so any library column can appear to explain it.
    Their resolution is TARGET_RESOLUTION_FACTOR times the estimated error.
    Next states and supplied derivatives are taken as exact (zeros).

    Args:
        X (TimeSeries): The observed trajectory.
        method (DerivativeMethod): How the targets are obtained.

    Returns:
        Vector: One resolution per dimension (d).
    """
    if (
        X.mode == Mode.MAP
        or method != DerivativeMethod.CENTRAL_DIFFERENCE
        or X.dt is None
    ):
        return np.zeros(X.dims)
    return TARGET_RESOLUTION_FACTOR * central_difference_error(X.data, X.dt)
