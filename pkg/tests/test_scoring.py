from __future__ import annotations

import numpy as np
import pytest

from entropicpy.basis import polynomial_terms
from entropicpy.bench import (
    DimensionScore,
    SystemSpec,
    score_support_recovery,
    truth_matrix,
)
from entropicpy.errors import ShapeError
from entropicpy.model import FittedModel
from entropicpy.support import SupportSet


@pytest.fixture
def truth() -> np.ndarray:
    return truth_matrix(SystemSpec.create("lorenz"))


def model_of(beta: np.ndarray) -> FittedModel:
    supports = tuple(
        SupportSet(np.nonzero(beta[:, j])[0]) for j in range(beta.shape[1])
    )
    return FittedModel(beta, supports, tuple(polynomial_terms(3, 2)))


def test_exact_model(truth: np.ndarray) -> None:
    score = score_support_recovery(model_of(truth.copy()), truth)
    assert (score.true_positives, score.false_positives) == (7, 0)
    assert score.false_negatives == 0
    assert score.coefficient_rel_error == 0.0
    assert score.exact
    assert score.per_dimension[1] == DimensionScore(3, 0, 0)


def test_empty_model(truth: np.ndarray) -> None:
    score = score_support_recovery(model_of(np.zeros_like(truth)), truth)
    assert score.true_positives == 0
    assert score.false_negatives == 7
    assert score.coefficient_rel_error == 1.0
    assert not score.exact


def test_spurious_term(truth: np.ndarray) -> None:
    beta = truth.copy()
    beta[9, 0] = 0.01
    beta[1, 0] = -10.5
    score = score_support_recovery(model_of(beta), truth)
    assert score.true_positives == 7
    assert score.false_positives == 1
    assert score.false_negatives == 0
    assert score.coefficient_rel_error == pytest.approx(0.05)
    assert score.per_dimension[0] == DimensionScore(2, 1, 0)


def test_to_dict(truth: np.ndarray) -> None:
    data = score_support_recovery(model_of(truth.copy()), truth).to_dict()
    assert data["true_positives"] == 7
    assert data["per_dimension"][2] == {
        "true_positives": 2,
        "false_positives": 0,
        "false_negatives": 0,
    }


def test_shape_mismatch(truth: np.ndarray) -> None:
    with pytest.raises(ShapeError):
        score_support_recovery(model_of(truth.copy()), truth[:, :2])
