from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any

from entropicpy.constants import (
    ALPHA_ERROR,
    DEFAULT_ALPHA,
    DEFAULT_JITTER_SCALE,
    DEFAULT_KNN_K,
    DEFAULT_LOG_BASE,
    DEFAULT_N_JOBS,
    DEFAULT_RNG_SEED,
    DEFAULT_SHUFFLE_COUNT,
    JITTER_SCALE_ERROR,
    KNN_K_ERROR,
    LOG_BASE_ERROR,
    N_JOBS_ERROR,
    RANK_TOL_ERROR,
    SHUFFLE_COUNT_ERROR,
)
from entropicpy.errors import InvalidInputError
from entropicpy.time_series import Mode


_UNITS = {math.e: "nats", 2.0: "bits", 10.0: "hartleys"}


class DerivativeMethod(Enum):
    CENTRAL_DIFFERENCE = "central_difference"
    USER_SUPPLIED = "user_supplied"
    NONE_MAP_MODE = "none_map_mode"


@dataclass(frozen=True)
class EstimatorConfig:
    """
    All knobs of the information estimators and of the greedy search.

    Attributes:
        knn_k (int): Neighbours used by the k-NN estimators.
        shuffle_count (int): Number of permutations in the shuffle test.
        alpha (float): Percentile (in [0, 1]) of the shuffle distribution used
            as tolerance.
        rng_seed (int): Seed of every random draw (jitter and permutations).
        jitter_scale (float): Tie breaking noise relative to the standard
            deviation of a variable.
        derivative_method (DerivativeMethod): How regression targets are
            obtained; NONE_MAP_MODE means the next state is the target.
        log_base (float): Base of the logarithm of reported values, the
            traces in model files and the log messages of the search; the
            estimators always work in nats.
        n_jobs (int): Worker threads for independent estimates.
        rank_tol (float | None): Relative singular value cut-off of the
            least squares projections (None for the default rule).
    """

    knn_k: int = DEFAULT_KNN_K
    shuffle_count: int = DEFAULT_SHUFFLE_COUNT
    alpha: float = DEFAULT_ALPHA
    rng_seed: int = DEFAULT_RNG_SEED
    jitter_scale: float = DEFAULT_JITTER_SCALE
    derivative_method: DerivativeMethod = DerivativeMethod.CENTRAL_DIFFERENCE
    log_base: float = DEFAULT_LOG_BASE
    n_jobs: int = DEFAULT_N_JOBS
    rank_tol: float | None = None

    def __post_init__(self) -> None:
        if self.knn_k < 1:
            raise InvalidInputError(KNN_K_ERROR)
        if self.shuffle_count < 1:
            raise InvalidInputError(SHUFFLE_COUNT_ERROR)
        if not 0.0 <= self.alpha <= 1.0:
            raise InvalidInputError(ALPHA_ERROR)
        if self.jitter_scale < 0:
            raise InvalidInputError(JITTER_SCALE_ERROR)
        if self.log_base <= 0 or self.log_base == 1:
            raise InvalidInputError(LOG_BASE_ERROR)
        if self.n_jobs < 1:
            raise InvalidInputError(N_JOBS_ERROR)
        if self.rank_tol is not None and self.rank_tol <= 0:
            raise InvalidInputError(RANK_TOL_ERROR)
        if isinstance(self.derivative_method, str):
            object.__setattr__(
                self,
                "derivative_method",
                DerivativeMethod(self.derivative_method),
            )

    @property
    def mode(self) -> Mode:
        """
        Map mode when the next state is the regression target.
        """
        if self.derivative_method == DerivativeMethod.NONE_MAP_MODE:
            return Mode.MAP
        return Mode.FLOW

    @property
    def information_unit(self) -> str:
        """
        Name of the unit of reported information values.
        """
        return _UNITS.get(self.log_base, f"log{self.log_base:g}")

    def in_log_base(self, nats: float) -> float:
        """
        Converts an estimate from nats to the configured log base.
        """
        if self.log_base == math.e:
            return nats
        return nats / math.log(self.log_base)

    def in_nats(self, value: float) -> float:
        """
        Inverse of in_log_base.
        """
        if self.log_base == math.e:
            return value
        return value * math.log(self.log_base)

    def to_dict(self) -> dict[str, Any]:
        """
        Returns a JSON serializable representation.
        """
        data = asdict(self)
        data["derivative_method"] = self.derivative_method.value
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> EstimatorConfig:
        """
        Inverse of to_dict; unknown keys are ignored.
        """
        known = {
            key: value
            for key, value in data.items()
            if key in cls.__dataclass_fields__
        }
        if "derivative_method" in known:
            known["derivative_method"] = DerivativeMethod(
                known["derivative_method"]
            )
        return cls(**known)
