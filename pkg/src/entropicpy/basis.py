# ruff: noqa: N803, N806
from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from entropicpy._typing import ColumnEvaluator, Exponents, Matrix, MatrixInput
from entropicpy.constants import (
    CUSTOM_COLUMN_ERROR,
    CUSTOM_LIBRARY_NAMES_ERROR,
    DIMENSION_ERROR,
    LIBRARY_CAPACITY_ERROR,
    MAXIMUM_LIBRARY_COLUMNS,
    NEGATIVE_DEGREE_ERROR,
    NOT_A_MONOMIAL_ERROR,
    STATE_LENGTH_ERROR,
    VAR_NAMES_LENGTH_ERROR,
)
from entropicpy.errors import CapacityError, InvalidInputError, ShapeError
from entropicpy.linalg import as_matrix
from entropicpy.time_series import TimeSeries


@dataclass(frozen=True)
class TermDescriptor:
    """
    Describes one column of the library.

    Attributes:
        exponents (Exponents): Power of every state variable; all zeros is
            the constant term. Empty for user supplied columns.
        label (str | None): Display name of a user supplied column.
    """

    exponents: Exponents = ()
    label: str | None = None

    @property
    def degree(self) -> int:
        """
        Total degree of the monomial.
        """
        return sum(self.exponents)

    @property
    def is_polynomial(self) -> bool:
        return self.label is None

    @property
    def is_constant(self) -> bool:
        return self.is_polynomial and self.degree == 0


@dataclass(frozen=True)
class BasisLibrary:
    """
    Candidate function matrix Phi(X) with one descriptor per column.

    Attributes:
        phi (Matrix): Evaluated candidates (N x K).
        terms (tuple[TermDescriptor, ...]): Descriptor of every column.
        source_dims (int): Number of state variables d.
    """

    phi: Matrix
    terms: tuple[TermDescriptor, ...]
    source_dims: int

    @property
    def columns(self) -> int:
        return len(self.terms)

    @property
    def rows(self) -> int:
        return int(self.phi.shape[0])

    def select(self, indices: Sequence[int]) -> Matrix:
        """
        Returns the sub-matrix Phi_s of the given columns (in given order).
        """
        return self.phi[:, list(indices)]


def count_library_columns(d: int, max_degree: int) -> int:
    """
    Number of monomials in d variables of total degree at most max_degree,
    C(d + max_degree, max_degree).

    Args:
        d (int): Number of state variables.
        max_degree (int): Maximum total degree.

    Returns:
        int: The number of library columns K.

    Raises:
        InvalidInputError: If d < 1 or max_degree < 0.
        CapacityError: If K exceeds MAXIMUM_LIBRARY_COLUMNS.
    """
    if d < 1:
        raise InvalidInputError(DIMENSION_ERROR)
    if max_degree < 0:
        raise InvalidInputError(NEGATIVE_DEGREE_ERROR)
    columns = comb(d + max_degree, max_degree)
    if columns > MAXIMUM_LIBRARY_COLUMNS:
        raise CapacityError(
            LIBRARY_CAPACITY_ERROR.format(
                columns=columns, limit=MAXIMUM_LIBRARY_COLUMNS
            )
        )
    return columns


def polynomial_terms(d: int, max_degree: int) -> Iterator[TermDescriptor]:
    """
    Yields all monomials of total degree <= max_degree in graded
    lexicographic order (constant first).

    Args:
        d (int): Number of state variables.
        max_degree (int): Maximum total degree.

    Yields:
        TermDescriptor: The monomials.
    """
    for degree in range(max_degree + 1):
        for combination in combinations_with_replacement(range(d), degree):
            exponents = [0] * d
            for variable in combination:
                exponents[variable] += 1
            yield TermDescriptor(tuple(exponents))


def _monomial_column(X: Matrix, exponents: Exponents) -> Matrix:
    column = np.ones(X.shape[0])
    for variable, power in enumerate(exponents):
        for _ in range(power):
            column = column * X[:, variable]
    return column


def evaluate_terms(
    states: MatrixInput, terms: Sequence[TermDescriptor]
) -> Matrix:
    """
    Evaluates polynomial term descriptors on the given states.

    Args:
        states (MatrixInput): States (M x d), a single state may be given as a
            vector.
        terms (Sequence[TermDescriptor]): Polynomial descriptors.

    Returns:
        Matrix: Evaluated columns (M x len(terms)).

    Raises:
        TypeError: If any descriptor is a user supplied column.
        ShapeError: If the descriptors do not match the state dimension.
    """
    X = np.asarray(states, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    X = as_matrix(X, "states")
    columns = np.empty((X.shape[0], len(terms)))
    for j, term in enumerate(terms):
        if not term.is_polynomial:
            raise TypeError(NOT_A_MONOMIAL_ERROR.format(label=term.label))
        if len(term.exponents) != X.shape[1]:
            raise ShapeError(
                STATE_LENGTH_ERROR.format(
                    got=X.shape[1], expected=len(term.exponents)
                )
            )
        columns[:, j] = _monomial_column(X, term.exponents)
    return columns


def build_polynomial_library(
    X: TimeSeries | MatrixInput, max_degree: int
) -> BasisLibrary:
    """
    Builds the power polynomial library of X.

    Args:
        X (TimeSeries | MatrixInput): Observed states (N x d).
        max_degree (int): Maximum total degree of the monomials.

    Returns:
        BasisLibrary: Library with C(d + max_degree, max_degree) columns,
            column 0 is the constant 1.

    Raises:
        InvalidInputError: If max_degree is negative or X is invalid.
        CapacityError: If the library would be too large.
    """
    data = X.data if isinstance(X, TimeSeries) else as_matrix(X, "X")
    d = data.shape[1]
    count_library_columns(d, max_degree)
    terms = tuple(polynomial_terms(d, max_degree))
    return BasisLibrary(evaluate_terms(data, terms), terms, d)


def build_custom_library(
    X: TimeSeries | MatrixInput,
    evaluators: Sequence[ColumnEvaluator],
    names: Sequence[str],
) -> BasisLibrary:
    """
    Builds a library from user supplied column evaluators (trigonometric,
    rational or any other basis).

    Args:
        X (TimeSeries | MatrixInput): Observed states (N x d).
        evaluators (Sequence[ColumnEvaluator]): Each maps X to one column.
        names (Sequence[str]): Display name of every column.

    Returns:
        BasisLibrary: The library in the given column order.

    Raises:
        InvalidInputError: If names and evaluators differ in length or a
            column has the wrong length or non-finite values.
    """
    if len(evaluators) != len(names):
        raise InvalidInputError(CUSTOM_LIBRARY_NAMES_ERROR)
    data = X.data if isinstance(X, TimeSeries) else as_matrix(X, "X")
    phi = np.empty((data.shape[0], len(evaluators)))
    for j, (evaluator, name) in enumerate(zip(evaluators, names)):
        column = np.asarray(evaluator(data), dtype=np.float64).ravel()
        if column.shape[0] != data.shape[0]:
            raise InvalidInputError(
                CUSTOM_COLUMN_ERROR.format(
                    name=name, got=column.shape[0], rows=data.shape[0]
                )
            )
        phi[:, j] = column
    phi = as_matrix(phi, "library")
    terms = tuple(TermDescriptor(label=name) for name in names)
    return BasisLibrary(phi, terms, data.shape[1])


def render_term(t: TermDescriptor, var_names: Sequence[str]) -> str:
    """
    Renders a descriptor as text, e.g. "x^2*y"; the constant is "1".

    Args:
        t (TermDescriptor): The descriptor.
        var_names (Sequence[str]): One name per state variable.

    Returns:
        str: The rendered term.

    Raises:
        InvalidInputError: If the number of names does not match.
    """
    if t.label is not None:
        return t.label
    if len(var_names) != len(t.exponents):
        raise InvalidInputError(
            VAR_NAMES_LENGTH_ERROR.format(
                expected=len(t.exponents), got=len(var_names)
            )
        )
    factors = [
        name if power == 1 else f"{name}^{power}"
        for name, power in zip(var_names, t.exponents)
        if power > 0
    ]
    return "*".join(factors) if factors else "1"
