from __future__ import annotations

import math

import numpy as np

from entropicpy._typing import Matrix, MatrixInput
from entropicpy.constants import ROW_MISMATCH_ERROR, TOO_FEW_SAMPLES_ERROR
from entropicpy.errors import InsufficientDataError, ShapeError
from entropicpy.estimators.config import EstimatorConfig
from entropicpy.linalg import as_matrix

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX_2 = np.uint64(0x94D049BB133111EB)
_UNIT = 2.0**-53


def _mix(values: np.ndarray) -> np.ndarray:
    # splitmix64 finalizer; uint64 array arithmetic wraps.
    z = values + _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX_1
    z = (z ^ (z >> np.uint64(27))) * _MIX_2
    return z ^ (z >> np.uint64(31))


def _row_keys(matrix: Matrix) -> np.ndarray:
    # Adding 0.0 maps -0.0 to 0.0 so equal values share their bits.
    bits = np.ascontiguousarray(matrix + 0.0).view(np.uint64)
    keys = np.zeros(matrix.shape[0], dtype=np.uint64)
    for j in range(matrix.shape[1]):
        keys = _mix(keys ^ bits[:, j])
    return keys


def _standardize(column: Matrix) -> Matrix:
    # fsum is exact, so the result does not depend on the row order.
    rows = column.shape[0]
    centred = column - math.fsum(column) / rows
    std = math.sqrt(math.fsum(centred * centred) / rows)
    return centred / std if std > 0 else centred


def check_samples(k: int, **variables: Matrix) -> None:
    """
    Checks that all variables have the same number of rows and more rows
    than k.

    Raises:
        ShapeError: On a row mismatch.
        InsufficientDataError: If there are not more samples than k.
    """
    (first, reference), *others = variables.items()
    rows = reference.shape[0]
    for name, variable in others:
        if variable.shape[0] != rows:
            raise ShapeError(
                ROW_MISMATCH_ERROR.format(
                    left=first,
                    left_rows=rows,
                    right=name,
                    right_rows=variable.shape[0],
                )
            )
    if rows <= k:
        raise InsufficientDataError(
            TOO_FEW_SAMPLES_ERROR.format(samples=rows, k=k)
        )


def prepare_samples(
    cfg: EstimatorConfig, **variables: MatrixInput
) -> list[Matrix]:
    """
    Validates the variables of one estimate, standardizes every column and
    adds uniform tie breaking jitter.

    Columns with zero deviation are only centred, their jitter is absolute.
    The jitter of an entry is a hash of the seed, of the row of its own
    variable and of the joint row of all variables, combined so that the
    order of the variables does not matter. Jitter therefore travels with
    its row: permuting the rows of every variable alike permutes the
    prepared samples, and swapping two variables swaps them.

    Args:
        cfg (EstimatorConfig): Seed, jitter scale and knn_k.
        **variables (MatrixInput): Samples (N x m_i) by name, the names are
            used in error messages.

    Returns:
        list[Matrix]: The prepared samples in argument order (new arrays).

    Raises:
        ShapeError: If the row counts differ.
        InsufficientDataError: If N <= cfg.knn_k.
    """
    matrices = {
        name: as_matrix(value, name) for name, value in variables.items()
    }
    check_samples(cfg.knn_k, **matrices)

    keys = [_row_keys(matrix) for matrix in matrices.values()]
    joint = np.zeros_like(keys[0])
    for key in keys:
        joint = joint + key
    seed = np.uint64(cfg.rng_seed & 0xFFFFFFFFFFFFFFFF)

    prepared = []
    for matrix, key in zip(matrices.values(), keys):
        result = np.empty_like(matrix)
        for j in range(matrix.shape[1]):
            column = _standardize(matrix[:, j])
            if cfg.jitter_scale > 0:
                own = _mix(key + np.uint64(j + 1))
                hashed = _mix(joint ^ own ^ seed)
                noise = (hashed >> np.uint64(11)).astype(np.float64) * _UNIT
                column = column + cfg.jitter_scale * noise
            result[:, j] = column
        prepared.append(result)
    return prepared
