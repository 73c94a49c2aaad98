from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from typing import Any, Union

import numpy as np

Value = np.float64
ValueInput = Union[Value, float]

Matrix = np.ndarray[Any, np.dtype[np.float64]]
MatrixInput = Union[Matrix, Sequence[Sequence[float]]]
Vector = np.ndarray[Any, np.dtype[np.float64]]

Index = int
Indices = Iterable[Index]

# Multi-index of non-negative powers, one entry per state variable.
Exponents = tuple[int, ...]

# Column evaluator of a user supplied basis function.
ColumnEvaluator = Callable[[Matrix], Vector]

# User supplied derivative estimator: (X, dt) -> (X used, X dot).
DerivativeEstimator = Callable[[Matrix, float], tuple[Matrix, Matrix]]

# User supplied information estimators in nats: (x, y, cfg) and
# (x, y, z, cfg), where cfg is the EstimatorConfig of the run.
MIEstimator = Callable[[Matrix, Matrix, Any], float]
CMIEstimator = Callable[[Matrix, Matrix, Matrix, Any], float]

# User supplied coefficient estimator: (Phi_s, y) -> one value per column.
CoefficientEstimator = Callable[[Matrix, Matrix], Vector]
