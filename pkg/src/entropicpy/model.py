from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from entropicpy._typing import Matrix, MatrixInput, Vector
from entropicpy.basis import TermDescriptor, evaluate_terms, render_term
from entropicpy.constants import (
    BETA_SHAPE_ERROR,
    HORIZON_ERROR,
    STATE_LENGTH_ERROR,
)
from entropicpy.errors import InvalidInputError, ShapeError
from entropicpy.estimators.config import EstimatorConfig
from entropicpy.integrators import iterate_map, rk4_trajectory
from entropicpy.support import SupportSet
from entropicpy.time_series import Mode, default_var_names


class Stage(Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


@dataclass(frozen=True)
class TraceRecord:
    """
    One decision of the greedy search.

    Attributes:
        stage (Stage): Forward selection or backward elimination.
        index (int): The candidate column that won the iteration.
        objective (float): Its conditional mutual information (nats).
        tolerance (float): The shuffle test tolerance it was compared with.
        halted (bool): Whether the stage stopped at this record (the
            candidate was then not added / not removed).
        support (tuple[int, ...]): The support after the decision.
    """

    stage: Stage
    index: int
    objective: float
    tolerance: float
    halted: bool
    support: tuple[int, ...]


@dataclass(frozen=True)
class ERTrace:
    """
    Diagnostics of one target dimension.

    Attributes:
        records (tuple[TraceRecord, ...]): Decisions in the order they were
            made.
        degenerate (bool): The target had (near) zero variance and no search
            was run.
        full_information (float | None): Mutual information between the
            target and its projection on the whole library, when computed.
    """

    records: tuple[TraceRecord, ...] = ()
    degenerate: bool = False
    full_information: float | None = None

    def __add__(self, other: ERTrace) -> ERTrace:
        """
        Concatenates two traces (forward then backward).
        """
        return ERTrace(
            self.records + other.records,
            self.degenerate or other.degenerate,
            self.full_information
            if self.full_information is not None
            else other.full_information,
        )

    def stage(self, stage: Stage) -> tuple[TraceRecord, ...]:
        """
        Records of the given stage.
        """
        return tuple(r for r in self.records if r.stage == stage)


@dataclass(frozen=True)
class FittedModel:
    """
    Sparse model recovered by entropic regression.

    Attributes:
        beta (Matrix): Coefficients (K x d), zero outside the supports.
        supports (tuple[SupportSet, ...]): Selected columns per dimension.
        terms (tuple[TermDescriptor, ...]): Library descriptors (K).
        config_snapshot (EstimatorConfig): Settings used for the fit.
        traces (tuple[ERTrace, ...]): Search diagnostics per dimension.
        mode (Mode): Whether the model is a vector field or a map.
        var_names (tuple[str, ...]): State variable names (d).
        degree (int | None): Polynomial degree of the library, if polynomial.
    """

    beta: Matrix
    supports: tuple[SupportSet, ...]
    terms: tuple[TermDescriptor, ...]
    config_snapshot: EstimatorConfig = field(default_factory=EstimatorConfig)
    traces: tuple[ERTrace, ...] = ()
    mode: Mode = Mode.FLOW
    var_names: tuple[str, ...] = ()
    degree: int | None = None

    def __post_init__(self) -> None:
        beta = np.asarray(self.beta, dtype=np.float64)
        if beta.ndim != 2 or len(beta) != len(self.terms):  # noqa: PLR2004
            raise ShapeError(
                BETA_SHAPE_ERROR.format(
                    shape=beta.shape, terms=len(self.terms)
                )
            )
        object.__setattr__(self, "beta", beta)
        if not self.var_names:
            object.__setattr__(
                self, "var_names", default_var_names(beta.shape[1])
            )

    @property
    def dims(self) -> int:
        return int(self.beta.shape[1])

    @property
    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self.beta))


def evaluate_model(m: FittedModel, state: MatrixInput) -> Vector:
    """
    Evaluates Phi(state) @ beta, the vector field (flows) or the next state
    (maps).

    Args:
        m (FittedModel): The model.
        state (MatrixInput): One state (length d) or a batch (M x d).

    Returns:
        Vector: The model output, shaped like state.

    Raises:
        ShapeError: If the state length is not d.
    """
    states = np.asarray(state, dtype=np.float64)
    single = states.ndim == 1
    if single:
        states = states.reshape(1, -1)
    if states.shape[1] != m.dims:
        raise ShapeError(
            STATE_LENGTH_ERROR.format(got=states.shape[1], expected=m.dims)
        )
    output = evaluate_terms(states, m.terms) @ m.beta
    return output[0] if single else output


def vector_field(m: FittedModel) -> Callable[[float, Vector], Vector]:
    """
    Returns f(t, x) of the model, ready for any ODE solver.
    """

    def f(t: float, x: Vector) -> Vector:  # noqa: ARG001
        return evaluate_model(m, x)

    return f


def integrate_model(
    m: FittedModel, x0: Sequence[float], horizon: float, dt: float = 1.0
) -> Matrix:
    """
    Integrates a flow model with RK4 or iterates a map model.

    Args:
        m (FittedModel): The model.
        x0 (Sequence[float]): Initial condition.
        horizon (float): Time span for flows, number of iterations for maps.
        dt (float): Step size (flows only).

    Returns:
        Matrix: Trajectory starting with x0 (round(horizon / dt) + 1 rows
            for flows, horizon + 1 rows for maps).

    Raises:
        InvalidInputError: If horizon is negative.
        ShapeError: If x0 has the wrong length.
        DivergenceError: If the trajectory blows up.
    """
    if horizon < 0:
        raise InvalidInputError(HORIZON_ERROR)
    start = np.asarray(x0, dtype=np.float64)
    if start.shape != (m.dims,):
        raise ShapeError(
            STATE_LENGTH_ERROR.format(got=start.size, expected=m.dims)
        )

    def step(x: Vector) -> Vector:
        return evaluate_model(m, x)

    if m.mode == Mode.MAP:
        return iterate_map(step, start, int(round(horizon)))
    return rk4_trajectory(step, start, int(round(horizon / dt)), dt)


def _format_coefficient(value: float) -> str:
    return f"{value:.6g}"


def model_equations(
    m: FittedModel, var_names: Sequence[str] | None = None
) -> list[str]:
    """
    Renders one equation per dimension, e.g. "dx/dt = -10*x + 10*y".

    Args:
        m (FittedModel): The model.
        var_names (Sequence[str] | None): Variable names (defaults to the
            model's).

    Returns:
        list[str]: The equations; an empty support renders as "0".
    """
    names = tuple(var_names) if var_names is not None else m.var_names
    equations = []
    for j, name in enumerate(names):
        lhs = f"{name}[n+1]" if m.mode == Mode.MAP else f"d{name}/dt"
        parts = []
        for index in m.supports[j].ascending():
            coefficient = m.beta[index, j]
            term = render_term(m.terms[index], names)
            text = _format_coefficient(abs(coefficient))
            body = text if term == "1" else f"{text}*{term}"
            sign = "-" if coefficient < 0 else "+"
            parts.append((sign, body))
        if not parts:
            rhs = "0"
        else:
            first_sign, first_body = parts[0]
            rhs = ("-" if first_sign == "-" else "") + first_body
            rhs += "".join(f" {sign} {body}" for sign, body in parts[1:])
        equations.append(f"{lhs} = {rhs}")
    return equations
