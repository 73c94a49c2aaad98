from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from entropicpy._typing import Matrix, MatrixInput
from entropicpy.constants import (
    DT_ERROR,
    SERIES_LENGTH_ERROR,
    VAR_NAMES_LENGTH_ERROR,
)
from entropicpy.errors import InsufficientDataError, InvalidInputError
from entropicpy.linalg import as_matrix


class Mode(Enum):
    """Whether the observations come from a flow (ODE) or a map."""

    FLOW = "flow"
    MAP = "map"


def default_var_names(dims: int) -> tuple[str, ...]:
    """
    Returns the names x1, ..., xd.
    """
    return tuple(f"x{i + 1}" for i in range(dims))


@dataclass(frozen=True)
class TimeSeries:
    """
    Sampled trajectory of a dynamical system.

    Attributes:
        data (Matrix): Observations, one row per sample (N x d).
        dt (float | None): Sampling interval for flows, None for maps.
        mode (Mode): Flow or map.
        var_names (tuple[str, ...]): One name per column.
        truth (Matrix | None): True coefficient matrix in the graded
            lexicographic library ordering, when known.
        truth_degree (int | None): Degree of the library truth refers to.
        metadata (dict): Free form information (system name, parameters,
            seed...).
    """

    data: Matrix
    dt: float | None = None
    mode: Mode = Mode.FLOW
    var_names: tuple[str, ...] = ()
    truth: Matrix | None = None
    truth_degree: int | None = None
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        data = as_matrix(self.data, "data")
        if data.shape[0] < 2:  # noqa: PLR2004
            raise InsufficientDataError(SERIES_LENGTH_ERROR)
        object.__setattr__(self, "data", data)
        if self.mode == Mode.FLOW and self.dt is not None and self.dt <= 0:
            raise InvalidInputError(DT_ERROR)
        if not self.var_names:
            object.__setattr__(
                self, "var_names", default_var_names(data.shape[1])
            )
        elif len(self.var_names) != data.shape[1]:
            raise InvalidInputError(
                VAR_NAMES_LENGTH_ERROR.format(
                    expected=data.shape[1], got=len(self.var_names)
                )
            )
        if self.truth is not None:
            object.__setattr__(self, "truth", as_matrix(self.truth, "truth"))

    @classmethod
    def from_array(
        cls,
        data: MatrixInput,
        dt: float | None = None,
        mode: Mode = Mode.FLOW,
        var_names: tuple[str, ...] | list[str] = (),
    ) -> TimeSeries:
        """
        Creates a time series without ground truth.
        """
        return cls(
            np.asarray(data, dtype=np.float64),
            dt=dt,
            mode=mode,
            var_names=tuple(var_names),
        )

    @property
    def samples(self) -> int:
        """
        Number of observations N.
        """
        return int(self.data.shape[0])

    @property
    def dims(self) -> int:
        """
        Number of state variables d.
        """
        return int(self.data.shape[1])
