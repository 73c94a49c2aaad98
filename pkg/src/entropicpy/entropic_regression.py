# ruff: noqa: N803, N806
"""
Entropic regression: greedy selection of library columns by conditional
mutual information, followed by least squares recovery of the coefficients.
"""

from __future__ import annotations

import logging
import math
import warnings
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import TypeVar, cast

import numpy as np

from entropicpy._typing import (
    CMIEstimator,
    CoefficientEstimator,
    Matrix,
    MatrixInput,
    MIEstimator,
)
from entropicpy.basis import BasisLibrary, build_polynomial_library
from entropicpy.constants import (
    COEFFICIENT_COUNT_ERROR,
    DEGENERATE_TARGET_STD,
    EXACT_FIT_RTOL,
    MAP_MODE_DT_WARNING,
    MISSING_DERIVATIVES_ERROR,
    RANK_DEFICIENT_WARNING,
    ROW_MISMATCH_ERROR,
    TOO_FEW_SAMPLES_ERROR,
)
from entropicpy.errors import (
    InsufficientDataError,
    InvalidInputError,
    ShapeError,
)
from entropicpy.estimators.config import DerivativeMethod, EstimatorConfig
from entropicpy.estimators.derivatives import (
    SuppliedDerivative,
    derivative_method_for,
    estimate_derivative,
    target_resolution,
)
from entropicpy.estimators.mutual_information import (
    conditional_mutual_information,
    mutual_information,
)
from entropicpy.estimators.shuffle_test import shuffle_tolerance
from entropicpy.linalg import (
    EMPTY_PROJECTION,
    EmptyProjection,
    Projection,
    as_matrix,
    ls_project,
    ls_solve,
    matrix_rank,
)
from entropicpy.model import ERTrace, FittedModel, Stage, TraceRecord
from entropicpy.support import (
    EMPTY_SUPPORT,
    SupportSet,
    all_one_index_missing,
)
from entropicpy.time_series import Mode, TimeSeries

logger = logging.getLogger(__name__)

T = TypeVar("T")
Item = TypeVar("Item")

LibraryBuilder = Callable[[Matrix], BasisLibrary]

_STAGE_SALT = {Stage.FORWARD: 1, Stage.BACKWARD: 2}


def _salt(dimension: int, stage: Stage, iteration: int) -> int:
    return (dimension << 32) | (_STAGE_SALT[stage] << 24) | iteration


def _ordered_map(
    fn: Callable[[Item], T], items: Sequence[Item], n_jobs: int
) -> list[T]:
    # Results always come back in the order of items.
    if n_jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _argmax(scores: Iterable[tuple[int, float]]) -> tuple[int, float]:
    # Smallest index wins ties.
    best_index, best_score = -1, -np.inf
    for index, score in sorted(scores):
        if score > best_score:
            best_index, best_score = index, score
    return best_index, best_score


def _argmin(scores: Iterable[tuple[int, float]]) -> tuple[int, float]:
    best_index, best_score = -1, np.inf
    for index, score in sorted(scores):
        if score < best_score:
            best_index, best_score = index, score
    return best_index, best_score


def _information(
    y: Matrix,
    signal: Matrix,
    conditioning: Projection,
    cfg: EstimatorConfig,
    mi_estimator: MIEstimator,
    cmi_estimator: CMIEstimator,
) -> float:
    if isinstance(conditioning, EmptyProjection):
        return mi_estimator(y, signal, cfg)
    return cmi_estimator(y, signal, conditioning, cfg)


def is_degenerate_target(y: MatrixInput) -> bool:
    """
    Whether the target has (near) zero variance.
    """
    values = as_matrix(y, "Y")
    scale = max(1.0, float(np.max(np.abs(values))))
    return bool(np.all(values.std(axis=0) <= DEGENERATE_TARGET_STD * scale))


class _Projector:
    """
    Least squares projections of one target on subsets of the library,
    cached by the set of columns.

    The resolution is the root mean square error the target is known to
    carry. A set of columns reproduces the target when its residual is
    within that error, or within rounding when the resolution is zero.
    """

    def __init__(
        self,
        y: Matrix,
        library: BasisLibrary,
        cfg: EstimatorConfig,
        resolution: float = 0.0,
    ) -> None:
        self.y = y
        self.library = library
        self.rank_tol = cfg.rank_tol
        self.threshold = max(
            EXACT_FIT_RTOL * float(np.linalg.norm(y)),
            resolution * math.sqrt(y.shape[0]),
        )
        self._cache: dict[frozenset[int], Projection] = {}
        self._constant = np.ptp(library.phi, axis=0) == 0

    def project(self, indices: Iterable[int]) -> Projection:
        key = frozenset(indices)
        if key not in self._cache:
            if not key:
                self._cache[key] = EMPTY_PROJECTION
            else:
                self._cache[key] = ls_project(
                    self.y, self.library.select(sorted(key)), self.rank_tol
                )
        return self._cache[key]

    def reproduces(self, indices: Iterable[int]) -> bool:
        """
        Whether the columns reproduce the target within its resolution, so
        that no other column can add information to them.
        """
        projection = self.project(indices)
        if isinstance(projection, EmptyProjection):
            return False
        residual = float(np.linalg.norm(self.y - projection))
        return residual <= self.threshold

    def signal(self, index: int, support: SupportSet, stage: Stage) -> Matrix:
        """
        The signal a candidate column is scored by: its own projection, or
        for constant columns the projection of the support with the column.
        """
        if not self._constant[index]:
            projection = self.project((index,))
        elif stage == Stage.FORWARD:
            projection = self.project((*support, index))
        else:
            projection = self.project(support)
        return cast(Matrix, projection)


def _prepare_target(Y_col: MatrixInput, Phi: BasisLibrary) -> Matrix:
    y = as_matrix(Y_col, "Y_col")
    if y.shape[0] != Phi.rows:
        raise ShapeError(
            ROW_MISMATCH_ERROR.format(
                left="Y_col",
                left_rows=y.shape[0],
                right="Phi",
                right_rows=Phi.rows,
            )
        )
    return y


def forward_select(
    Y_col: MatrixInput,
    Phi: BasisLibrary,
    cfg: EstimatorConfig,
    dimension: int = 0,
    resolution: float = 0.0,
    mi_estimator: MIEstimator = mutual_information,
    cmi_estimator: CMIEstimator = conditional_mutual_information,
) -> tuple[SupportSet, ERTrace]:
    """
    Greedy forward selection.

    Starting from the empty support, every iteration scores each unused
    column i by I(Y; V(Y, Phi_i) | V(Y, Phi_s)) and takes the best one. The
    stage halts without adding the winner when its score is not above the
    shuffle test tolerance, or when the information still missing,
    I(Y; V(Y, Phi)) - I(Y; V(Y, Phi_s)), is below it. It also halts once the
    support reproduces the target within its resolution.

    Args:
        Y_col (MatrixInput): One target dimension (N).
        Phi (BasisLibrary): The candidate library (N x K).
        cfg (EstimatorConfig): Estimator and test settings.
        dimension (int): Target dimension, only used to salt the shuffles.
        resolution (float): Root mean square error of the target, zero for
            exact targets.
        mi_estimator (MIEstimator): Mutual information estimator in nats.
        cmi_estimator (CMIEstimator): Conditional mutual information
            estimator in nats.

    Returns:
        tuple[SupportSet, ERTrace]: Selected columns in order of selection
            and the decision trace.

    Raises:
        ShapeError: If Y_col and Phi have different numbers of rows.
        InsufficientDataError: If N <= cfg.knn_k.
    """
    y = _prepare_target(Y_col, Phi)
    K = Phi.columns
    if K == 0:
        return EMPTY_SUPPORT, ERTrace()
    if is_degenerate_target(y):
        return EMPTY_SUPPORT, ERTrace(degenerate=True)

    projector = _Projector(y, Phi, cfg, resolution)
    full_information = mi_estimator(y, projector.project(range(K)), cfg)
    support_information = 0.0
    support = EMPTY_SUPPORT
    records: list[TraceRecord] = []
    max_size = min(K, y.shape[0] - 2)

    iteration = 0
    while len(support) < max_size:
        if projector.reproduces(support):
            logger.debug(
                "dimension %d forward %d: target reproduced within resolution",
                dimension,
                iteration,
            )
            break
        conditioning = projector.project(support)
        candidates = [i for i in range(K) if i not in support]

        def score(
            i: int, support: SupportSet = support, z: Projection = conditioning
        ) -> float:
            signal = projector.signal(i, support, Stage.FORWARD)
            return _information(
                y, signal, z, cfg, mi_estimator, cmi_estimator
            )

        scores = _ordered_map(score, candidates, cfg.n_jobs)
        winner, objective = _argmax(zip(candidates, scores))
        tolerance = shuffle_tolerance(
            y,
            projector.signal(winner, support, Stage.FORWARD),
            conditioning,
            cfg,
            salt=_salt(dimension, Stage.FORWARD, iteration),
            mi_estimator=mi_estimator,
            cmi_estimator=cmi_estimator,
        ).value
        halted = (
            objective <= tolerance
            or full_information - support_information < tolerance
        )
        if not halted:
            support = support + winner
            support_information = mi_estimator(
                y, cast(Matrix, projector.project(support)), cfg
            )
        records.append(
            TraceRecord(
                Stage.FORWARD,
                winner,
                objective,
                tolerance,
                halted,
                support.indices,
            )
        )
        logger.debug(
            "dimension %d forward %d: column %d I=%.4g tol=%.4g %s %s",
            dimension,
            iteration,
            winner,
            cfg.in_log_base(objective),
            cfg.in_log_base(tolerance),
            cfg.information_unit,
            "halt" if halted else "add",
        )
        if halted:
            break
        iteration += 1

    return support, ERTrace(tuple(records), full_information=full_information)


def backward_eliminate(
    Y_col: MatrixInput,
    Phi: BasisLibrary,
    s0: SupportSet,
    cfg: EstimatorConfig,
    dimension: int = 0,
    resolution: float = 0.0,
    mi_estimator: MIEstimator = mutual_information,
    cmi_estimator: CMIEstimator = conditional_mutual_information,
) -> tuple[SupportSet, ERTrace]:
    """
    Greedy backward elimination.

    Every iteration computes, for each member i of the support, the
    information lost by removing it, I(Y; V(Y, Phi_i) | V(Y, Phi_{s-i})),
    and removes the member with the smallest loss if that loss is not above
    the shuffle test tolerance. Otherwise the stage halts. Members whose
    removal leaves the target reproduced within its resolution are removed
    first, without a test, smallest index first.

    Args:
        Y_col (MatrixInput): One target dimension (N).
        Phi (BasisLibrary): The candidate library (N x K).
        s0 (SupportSet): Initial support.
        cfg (EstimatorConfig): Estimator and test settings.
        dimension (int): Target dimension, only used to salt the shuffles.
        resolution (float): Root mean square error of the target, zero for
            exact targets.
        mi_estimator (MIEstimator): Mutual information estimator in nats.
        cmi_estimator (CMIEstimator): Conditional mutual information
            estimator in nats.

    Returns:
        tuple[SupportSet, ERTrace]: The remaining support and the decision
            trace.

    Raises:
        InvalidInputError: If s0 refers to columns outside Phi.
        ShapeError: If Y_col and Phi have different numbers of rows.
    """
    y = _prepare_target(Y_col, Phi)
    s0.check_range(Phi.columns)
    if len(s0) == 0:
        return s0, ERTrace()
    if is_degenerate_target(y):
        return EMPTY_SUPPORT, ERTrace(degenerate=True)

    projector = _Projector(y, Phi, cfg, resolution)
    support = s0
    records: list[TraceRecord] = []

    iteration = 0
    while len(support) > 0:
        members = list(all_one_index_missing(support))
        redundant = [i for i, rest in members if projector.reproduces(rest)]
        if redundant:
            # Nothing is lost; no test needed.
            loser = min(redundant)
            support = support - loser
            records.append(
                TraceRecord(
                    Stage.BACKWARD, loser, 0.0, 0.0, False, support.indices
                )
            )
            logger.debug(
                "dimension %d backward %d: column %d redundant, remove",
                dimension,
                iteration,
                loser,
            )
            iteration += 1
            continue

        def loss(
            member: tuple[int, SupportSet], support: SupportSet = support
        ) -> float:
            i, rest = member
            signal = projector.signal(i, support, Stage.BACKWARD)
            return _information(
                y,
                signal,
                projector.project(rest),
                cfg,
                mi_estimator,
                cmi_estimator,
            )

        losses = _ordered_map(loss, members, cfg.n_jobs)
        loser, objective = _argmin(zip((i for i, _ in members), losses))
        tolerance = shuffle_tolerance(
            y,
            projector.signal(loser, support, Stage.BACKWARD),
            projector.project(support - loser),
            cfg,
            salt=_salt(dimension, Stage.BACKWARD, iteration),
            mi_estimator=mi_estimator,
            cmi_estimator=cmi_estimator,
        ).value
        halted = objective > tolerance
        if not halted:
            support = support - loser
        records.append(
            TraceRecord(
                Stage.BACKWARD,
                loser,
                objective,
                tolerance,
                halted,
                support.indices,
            )
        )
        logger.debug(
            "dimension %d backward %d: column %d I=%.4g tol=%.4g %s %s",
            dimension,
            iteration,
            loser,
            cfg.in_log_base(objective),
            cfg.in_log_base(tolerance),
            cfg.information_unit,
            "halt" if halted else "remove",
        )
        if halted:
            break
        iteration += 1

    return support, ERTrace(tuple(records))


def recover_coefficients(
    library: BasisLibrary,
    y: MatrixInput,
    support: SupportSet,
    cfg: EstimatorConfig,
    dimension: int = 0,
    coefficient_estimator: CoefficientEstimator | None = None,
) -> Matrix:
    """
    Coefficients of the support columns, zero elsewhere.

    By default these are least squares coefficients, with a RuntimeWarning
    when the support columns are linearly dependent; the minimum norm
    solution is returned then. A coefficient_estimator replaces the least
    squares solve and gets the support columns in ascending order.

    Raises:
        ShapeError: If the coefficient estimator returns the wrong number of
            values.
    """
    y = as_matrix(y, "y")
    column = np.zeros(library.columns)
    if len(support) == 0:
        return column
    indices = list(support.ascending())
    Phi_s = library.select(indices)
    if coefficient_estimator is not None:
        values = np.asarray(coefficient_estimator(Phi_s, y), dtype=float)
        values = values.reshape(-1)
        if values.shape[0] != len(indices):
            raise ShapeError(
                COEFFICIENT_COUNT_ERROR.format(
                    got=values.shape[0], expected=len(indices)
                )
            )
        column[indices] = values
        return column
    if matrix_rank(Phi_s, cfg.rank_tol) < len(indices):
        warnings.warn(
            RANK_DEFICIENT_WARNING.format(dimension=dimension),
            RuntimeWarning,
            stacklevel=2,
        )
    column[indices] = ls_solve(Phi_s, y, cfg.rank_tol)[:, 0]
    return column


def fit_library(
    library: BasisLibrary,
    targets: MatrixInput,
    cfg: EstimatorConfig,
    skip_forward: bool = False,  # noqa: FBT001, FBT002
    resolutions: Sequence[float] | None = None,
    mi_estimator: MIEstimator = mutual_information,
    cmi_estimator: CMIEstimator = conditional_mutual_information,
    coefficient_estimator: CoefficientEstimator | None = None,
) -> tuple[Matrix, tuple[SupportSet, ...], tuple[ERTrace, ...]]:
    """
    Runs the search and the coefficient recovery on every target column.

    Args:
        library (BasisLibrary): Candidate library (N x K).
        targets (MatrixInput): Regression targets (N x d).
        cfg (EstimatorConfig): Estimator and test settings.
        skip_forward (bool): Start backward elimination from the full
            library instead of running forward selection first.
        resolutions (Sequence[float] | None): Root mean square error of
            every target column; exact targets when None.
        mi_estimator (MIEstimator): Mutual information estimator.
        cmi_estimator (CMIEstimator): Conditional mutual information
            estimator.
        coefficient_estimator (CoefficientEstimator | None): Replaces the
            least squares recovery.

    Returns:
        tuple: Coefficients (K x d), supports and traces per dimension.

    Raises:
        InsufficientDataError: If N <= cfg.knn_k.
        ShapeError: If resolutions does not have one value per target.
    """
    Y = as_matrix(targets, "targets")
    if Y.shape[0] <= cfg.knn_k:
        raise InsufficientDataError(
            TOO_FEW_SAMPLES_ERROR.format(samples=Y.shape[0], k=cfg.knn_k)
        )
    if resolutions is None:
        resolutions = [0.0] * Y.shape[1]
    elif len(resolutions) != Y.shape[1]:
        raise ShapeError(
            ROW_MISMATCH_ERROR.format(
                left="resolutions",
                left_rows=len(resolutions),
                right="target columns",
                right_rows=Y.shape[1],
            )
        )
    estimators = {"mi_estimator": mi_estimator, "cmi_estimator": cmi_estimator}
    beta = np.zeros((library.columns, Y.shape[1]))
    supports: list[SupportSet] = []
    traces: list[ERTrace] = []
    for j in range(Y.shape[1]):
        y = Y[:, [j]]
        resolution = float(resolutions[j])
        if is_degenerate_target(y):
            support, trace = EMPTY_SUPPORT, ERTrace(degenerate=True)
        elif skip_forward:
            support, trace = backward_eliminate(
                y,
                library,
                SupportSet.full(library.columns),
                cfg,
                j,
                resolution,
                **estimators,
            )
        else:
            selected, forward_trace = forward_select(
                y, library, cfg, j, resolution, **estimators
            )
            support, backward_trace = backward_eliminate(
                y, library, selected, cfg, j, resolution, **estimators
            )
            trace = forward_trace + backward_trace
        beta[:, j] = recover_coefficients(
            library, y, support, cfg, j, coefficient_estimator
        )
        supports.append(support)
        traces.append(trace)
        logger.info(
            "dimension %d: %d of %d columns selected %s",
            j,
            len(support),
            library.columns,
            list(support.ascending()),
        )
    return beta, tuple(supports), tuple(traces)


def erfit(
    X: TimeSeries,
    cfg: EstimatorConfig,
    degree: int,
    skip_forward: bool = False,  # noqa: FBT001, FBT002
    derivatives: SuppliedDerivative | None = None,
    library_builder: LibraryBuilder | None = None,
    mi_estimator: MIEstimator = mutual_information,
    cmi_estimator: CMIEstimator = conditional_mutual_information,
    coefficient_estimator: CoefficientEstimator | None = None,
) -> FittedModel:
    """
    Identifies a sparse model of the time series.

    Computes the regression targets (derivatives for flows, next states for
    maps), builds the library and runs forward selection and backward
    elimination on every dimension independently, then recovers the selected
    coefficients by least squares.

    Central difference targets carry a truncation error. It is estimated per
    dimension by comparing with a fourth order difference, and the search
    treats a support that reproduces the target within that error as
    complete.

    Args:
        X (TimeSeries): Observed trajectory.
        cfg (EstimatorConfig): Estimator and test settings.
        degree (int): Maximum degree of the polynomial library.
        skip_forward (bool): Backward elimination only, starting from the
            full library.
        derivatives (SuppliedDerivative | None): Precomputed derivatives
            (N x d) or a derivative estimator (X, dt) -> (X used, X dot).
        library_builder (LibraryBuilder | None): Builds a non polynomial
            library from the states; degree is then only recorded.
        mi_estimator (MIEstimator): Mutual information estimator.
        cmi_estimator (CMIEstimator): Conditional mutual information
            estimator.
        coefficient_estimator (CoefficientEstimator | None): Replaces the
            least squares recovery.

    Returns:
        FittedModel: The identified model with its diagnostics.

    Raises:
        InsufficientDataError: If there are too few observations.
        InvalidInputError: If dt is missing in flow mode, or the config asks
            for supplied derivatives and none are given.
    """
    if X.mode == Mode.MAP and X.dt is not None:
        warnings.warn(MAP_MODE_DT_WARNING, RuntimeWarning, stacklevel=2)
    if (
        cfg.derivative_method == DerivativeMethod.USER_SUPPLIED
        and derivatives is None
    ):
        raise InvalidInputError(MISSING_DERIVATIVES_ERROR)
    if cfg.derivative_method == DerivativeMethod.NONE_MAP_MODE:
        method = DerivativeMethod.NONE_MAP_MODE
    else:
        method = derivative_method_for(X, derivatives)
    cfg = replace(cfg, derivative_method=method)
    mode = cfg.mode

    states, targets = estimate_derivative(X, method, derivatives)
    if library_builder is None:
        library = build_polynomial_library(states, degree)
    else:
        library = library_builder(states)
    resolutions = target_resolution(X, method)
    logger.info(
        "fitting %d dimensions on %d samples with %d candidate columns",
        targets.shape[1],
        targets.shape[0],
        library.columns,
    )
    if np.any(resolutions > 0):
        logger.info(
            "target resolution %s",
            ", ".join(f"{value:.3g}" for value in resolutions),
        )
    beta, supports, traces = fit_library(
        library,
        targets,
        cfg,
        skip_forward,
        resolutions=list(resolutions),
        mi_estimator=mi_estimator,
        cmi_estimator=cmi_estimator,
        coefficient_estimator=coefficient_estimator,
    )
    return FittedModel(
        beta=beta,
        supports=supports,
        terms=library.terms,
        config_snapshot=cfg,
        traces=traces,
        mode=mode,
        var_names=X.var_names,
        degree=degree if library_builder is None else None,
    )
