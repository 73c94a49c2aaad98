from __future__ import annotations

import numpy as np
import pytest

from entropicpy.errors import InsufficientDataError, ShapeError
from entropicpy.estimators import (
    EstimatorConfig,
    conditional_mutual_information,
    mutual_information,
)
from entropicpy.linalg import EMPTY_PROJECTION


@pytest.fixture
def cfg() -> EstimatorConfig:
    return EstimatorConfig()


def _gaussian_pair(
    rho: float, samples: int, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    generator = np.random.default_rng(seed)
    x = generator.normal(size=samples)
    y = rho * x + np.sqrt(1.0 - rho**2) * generator.normal(size=samples)
    return x, y


@pytest.mark.parametrize("rho", [0.3, 0.6, 0.9])
def test_gaussian_mutual_information(rho: float, cfg: EstimatorConfig) -> None:
    x, y = _gaussian_pair(rho, 5000, seed=1)
    expected = -0.5 * np.log(1.0 - rho**2)
    assert abs(mutual_information(x, y, cfg) - expected) < 0.05


def test_independent_mutual_information_is_small(
    cfg: EstimatorConfig,
) -> None:
    x, y = _gaussian_pair(0.0, 2000, seed=2)
    assert abs(mutual_information(x, y, cfg)) < 0.03


@pytest.mark.parametrize("seed", range(10))
def test_mutual_information_is_symmetric(
    cfg: EstimatorConfig, seed: int
) -> None:
    x, y = _gaussian_pair(0.5, 500, seed=seed)
    assert mutual_information(x, y, cfg) == mutual_information(y, x, cfg)
    generator = np.random.default_rng(seed)
    counts = generator.integers(0, 5, size=(500, 2)).astype(float)
    levels = counts[:, [0]] + generator.integers(0, 3, size=(500, 1))
    assert mutual_information(counts, levels, cfg) == mutual_information(
        levels, counts, cfg
    )


def test_conditional_mutual_information_is_symmetric(
    cfg: EstimatorConfig,
) -> None:
    generator = np.random.default_rng(12)
    z = generator.normal(size=600)
    x = z + generator.normal(size=600)
    y = np.round(x + z)
    assert conditional_mutual_information(
        x, y, z, cfg
    ) == conditional_mutual_information(y, x, z, cfg)


def test_estimates_ignore_row_order(cfg: EstimatorConfig) -> None:
    generator = np.random.default_rng(13)
    z = generator.normal(size=(700, 2))
    x = z[:, 0] + 0.5 * generator.normal(size=700)
    y = np.round(x - z[:, 1], 1)
    order = generator.permutation(700)
    assert mutual_information(x, y, cfg) == mutual_information(
        x[order], y[order], cfg
    )
    assert conditional_mutual_information(
        x, y, z, cfg
    ) == conditional_mutual_information(x[order], y[order], z[order], cfg)


def test_mutual_information_is_scale_invariant(cfg: EstimatorConfig) -> None:
    x, y = _gaussian_pair(0.7, 1000, seed=4)
    assert mutual_information(x, y, cfg) == pytest.approx(
        mutual_information(1000.0 * x + 5.0, y, cfg), abs=1e-2
    )


def test_mutual_information_with_itself_is_large(
    cfg: EstimatorConfig,
) -> None:
    x, _ = _gaussian_pair(0.0, 1000, seed=5)
    assert mutual_information(x, 2.0 * x, cfg) > 3.0


def test_mutual_information_is_deterministic(cfg: EstimatorConfig) -> None:
    x, y = _gaussian_pair(0.4, 300, seed=6)
    assert mutual_information(x, y, cfg) == mutual_information(x, y, cfg)


def test_empty_conditioning_reduces_to_mutual_information(
    cfg: EstimatorConfig,
) -> None:
    x, y = _gaussian_pair(0.6, 800, seed=7)
    assert conditional_mutual_information(
        x, y, EMPTY_PROJECTION, cfg
    ) == mutual_information(x, y, cfg)


def test_conditioning_removes_shared_cause(cfg: EstimatorConfig) -> None:
    generator = np.random.default_rng(8)
    z = generator.normal(size=3000)
    x = z + 0.5 * generator.normal(size=3000)
    y = z + 0.5 * generator.normal(size=3000)
    assert mutual_information(x, y, cfg) > 0.3
    assert abs(conditional_mutual_information(x, y, z, cfg)) < 0.05


def test_conditional_mutual_information_of_direct_link(
    cfg: EstimatorConfig,
) -> None:
    generator = np.random.default_rng(9)
    z = generator.normal(size=2000)
    x = generator.normal(size=2000)
    y = x + z + 0.3 * generator.normal(size=2000)
    assert conditional_mutual_information(x, y, z, cfg) > 0.5


def test_log_base_only_affects_reporting() -> None:
    x, y = _gaussian_pair(0.6, 500, seed=10)
    nats = mutual_information(x, y, EstimatorConfig())
    bits_cfg = EstimatorConfig(log_base=2.0)
    assert mutual_information(x, y, bits_cfg) == nats
    assert bits_cfg.in_log_base(nats) == pytest.approx(nats / np.log(2.0))
    assert bits_cfg.in_nats(bits_cfg.in_log_base(nats)) == pytest.approx(nats)
    assert bits_cfg.information_unit == "bits"
    assert EstimatorConfig().in_log_base(nats) == nats
    assert EstimatorConfig().information_unit == "nats"
    assert EstimatorConfig(log_base=3.0).information_unit == "log3"


def test_threads_give_identical_estimates() -> None:
    x, y = _gaussian_pair(0.6, 800, seed=11)
    z = x + y
    assert mutual_information(
        x, y, EstimatorConfig(n_jobs=3)
    ) == mutual_information(x, y, EstimatorConfig())
    assert conditional_mutual_information(
        x, y, z, EstimatorConfig(n_jobs=3)
    ) == conditional_mutual_information(x, y, z, EstimatorConfig())


def test_errors(cfg: EstimatorConfig) -> None:
    with pytest.raises(ShapeError):
        mutual_information(np.ones(10), np.ones(9), cfg)
    with pytest.raises(ShapeError):
        conditional_mutual_information(
            np.arange(10.0), np.arange(10.0), np.arange(9.0), cfg
        )
    with pytest.raises(InsufficientDataError):
        mutual_information([1.0, 2.0], [2.0, 1.0], cfg)
