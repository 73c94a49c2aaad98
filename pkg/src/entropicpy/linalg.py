# ruff: noqa: N803, N806
from __future__ import annotations

from typing import Union

import numpy as np

from entropicpy._typing import Matrix, MatrixInput
from entropicpy.constants import (
    EMPTY_MATRIX_ERROR,
    NON_FINITE_ERROR,
    NOT_A_MATRIX_ERROR,
    RANK_TOL_ERROR,
    ROW_MISMATCH_ERROR,
)
from entropicpy.errors import InvalidInputError, ShapeError


class EmptyProjection:
    """
    Result of projecting onto an empty set of library columns.

    Estimators receiving it condition on nothing, which reduces conditional
    mutual information to plain mutual information.
    """

    _instance: EmptyProjection | None = None

    def __new__(cls) -> EmptyProjection:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EMPTY_PROJECTION"

    def __bool__(self) -> bool:
        return False


EMPTY_PROJECTION = EmptyProjection()

Projection = Union[Matrix, EmptyProjection]


def as_matrix(a: MatrixInput, name: str = "matrix") -> Matrix:
    """
    Converts the input to a finite two dimensional float array.

    One dimensional inputs are treated as a single column.

    Args:
        a (MatrixInput): The data to convert.
        name (str): Name used in error messages.

    Returns:
        Matrix: The converted matrix (a copy only if conversion was needed).

    Raises:
        InvalidInputError: If the data has more than two dimensions or
            contains NaN or Inf.
    """
    matrix = np.asarray(a, dtype=np.float64)
    if matrix.ndim == 1:
        matrix = matrix.reshape(-1, 1)
    if matrix.ndim != 2:  # noqa: PLR2004
        raise InvalidInputError(
            NOT_A_MATRIX_ERROR.format(name=name, ndim=matrix.ndim)
        )
    if not np.all(np.isfinite(matrix)):
        raise InvalidInputError(NON_FINITE_ERROR.format(name=name))
    return matrix


def _check_rows(left: Matrix, right: Matrix, names: tuple[str, str]) -> None:
    if left.shape[0] != right.shape[0]:
        raise ShapeError(
            ROW_MISMATCH_ERROR.format(
                left=names[0],
                left_rows=left.shape[0],
                right=names[1],
                right_rows=right.shape[0],
            )
        )


def default_rank_tol(A: Matrix) -> float:
    """
    The conventional relative cut-off: max(rows, cols) times the unit
    roundoff of float64.
    """
    return float(max(A.shape) * np.finfo(np.float64).eps)


def pseudoinverse(A: MatrixInput, rank_tol: float | None = None) -> Matrix:
    """
    Computes the Moore-Penrose pseudoinverse by singular value decomposition.

    Singular values below rank_tol * sigma_max are treated as zero.

    Args:
        A (MatrixInput): The matrix to invert.
        rank_tol (float | None): Relative cut-off for singular values (if None
            max(rows, cols) * machine epsilon is used).

    Returns:
        Matrix: The pseudoinverse with shape (cols, rows).

    Raises:
        InvalidInputError: If A is empty, contains non-finite entries or
            rank_tol is not positive.
    """
    A = as_matrix(A, "A")
    if A.size == 0:
        raise InvalidInputError(EMPTY_MATRIX_ERROR.format(name="A"))
    if rank_tol is None:
        rank_tol = default_rank_tol(A)
    elif rank_tol <= 0:
        raise InvalidInputError(RANK_TOL_ERROR)

    U, s, Vh = np.linalg.svd(A, full_matrices=False)
    cutoff = rank_tol * s[0] if s.size > 0 else 0.0
    s_inv = np.zeros_like(s)
    keep = s > cutoff
    s_inv[keep] = 1.0 / s[keep]
    return (Vh.T * s_inv) @ U.T


def matrix_rank(A: MatrixInput, rank_tol: float | None = None) -> int:
    """
    Numerical rank with the same cut-off rule as pseudoinverse.
    """
    A = as_matrix(A, "A")
    if A.size == 0:
        return 0
    if rank_tol is None:
        rank_tol = default_rank_tol(A)
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(s > rank_tol * s[0]))


def ls_solve(
    Phi: MatrixInput, Y: MatrixInput, rank_tol: float | None = None
) -> Matrix:
    """
    Least squares coefficients beta = pinv(Phi) @ Y.

    Among all minimizers of the Frobenius residual the minimum norm one is
    returned.

    Args:
        Phi (MatrixInput): Design matrix (N x K).
        Y (MatrixInput): Targets (N x d).
        rank_tol (float | None): See pseudoinverse.

    Returns:
        Matrix: Coefficients with shape (K, d).

    Raises:
        ShapeError: If Phi and Y have different numbers of rows.
    """
    Phi = as_matrix(Phi, "Phi")
    Y = as_matrix(Y, "Y")
    _check_rows(Phi, Y, ("Phi", "Y"))
    if Phi.shape[1] == 0:
        return np.zeros((0, Y.shape[1]))
    return pseudoinverse(Phi, rank_tol) @ Y


def ls_project(
    Y: MatrixInput, Phi_s: MatrixInput, rank_tol: float | None = None
) -> Projection:
    """
    Least squares reconstruction of Y from the columns of Phi_s,
    Phi_s @ pinv(Phi_s) @ Y.

    Args:
        Y (MatrixInput): Targets (N x d).
        Phi_s (MatrixInput): Selected library columns (N x |s|), may have
            zero columns.
        rank_tol (float | None): See pseudoinverse.

    Returns:
        Projection: The projected signal (N x d), or EMPTY_PROJECTION when
            Phi_s has no columns.

    Raises:
        ShapeError: If Phi_s and Y have different numbers of rows.
    """
    Y = as_matrix(Y, "Y")
    Phi_s = np.asarray(Phi_s, dtype=np.float64)
    if Phi_s.ndim == 1:
        Phi_s = Phi_s.reshape(-1, 1)
    Phi_s = as_matrix(Phi_s, "Phi_s")
    _check_rows(Phi_s, Y, ("Phi_s", "Y"))
    if Phi_s.shape[1] == 0:
        return EMPTY_PROJECTION
    return Phi_s @ (pseudoinverse(Phi_s, rank_tol) @ Y)
