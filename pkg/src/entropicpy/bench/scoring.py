from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

from entropicpy._typing import MatrixInput
from entropicpy.constants import SCORE_SHAPE_ERROR
from entropicpy.errors import ShapeError
from entropicpy.model import FittedModel


@dataclass(frozen=True)
class DimensionScore:
    true_positives: int
    false_positives: int
    false_negatives: int


@dataclass(frozen=True)
class SupportScore:
    """
    Comparison of a recovered model with the true coefficients.

    Attributes:
        true_positives (int): Terms present in both.
        false_positives (int): Recovered terms absent from the truth.
        false_negatives (int): True terms that were missed.
        coefficient_rel_error (float): Largest |beta_hat - beta| / |beta|
            over the true terms (0 without true terms).
        per_dimension (tuple[DimensionScore, ...]): The counts of every
            dimension.
    """

    true_positives: int
    false_positives: int
    false_negatives: int
    coefficient_rel_error: float
    per_dimension: tuple[DimensionScore, ...] = ()

    @property
    def exact(self) -> bool:
        """
        Whether the support was recovered without any error.
        """
        return self.false_positives == 0 and self.false_negatives == 0

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def score_support_recovery(
    m: FittedModel, truth: MatrixInput
) -> SupportScore:
    """
    Compares the nonzero pattern and the values of the recovered
    coefficients with the truth, dimension by dimension.

    Args:
        m (FittedModel): The recovered model.
        truth (MatrixInput): True coefficients in the same library ordering.

    Returns:
        SupportScore: The counts and the coefficient error.

    Raises:
        ShapeError: If the coefficient shapes differ.
    """
    expected = np.asarray(truth, dtype=np.float64)
    if expected.shape != m.beta.shape:
        raise ShapeError(
            SCORE_SHAPE_ERROR.format(got=m.beta.shape, expected=expected.shape)
        )
    recovered = m.beta != 0
    present = expected != 0
    per_dimension = tuple(
        DimensionScore(
            int(np.sum(recovered[:, j] & present[:, j])),
            int(np.sum(recovered[:, j] & ~present[:, j])),
            int(np.sum(~recovered[:, j] & present[:, j])),
        )
        for j in range(expected.shape[1])
    )
    relative = np.abs(m.beta[present] - expected[present]) / np.abs(
        expected[present]
    )
    return SupportScore(
        true_positives=sum(s.true_positives for s in per_dimension),
        false_positives=sum(s.false_positives for s in per_dimension),
        false_negatives=sum(s.false_negatives for s in per_dimension),
        coefficient_rel_error=float(relative.max()) if relative.size else 0.0,
        per_dimension=per_dimension,
    )
