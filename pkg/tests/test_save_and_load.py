from __future__ import annotations

from pathlib import Path

import numpy as np

from entropicpy.bench import SystemSpec, simulate
from entropicpy.entropic_regression import erfit
from entropicpy.estimators import EstimatorConfig
from entropicpy.loaders import load_model_from_json, load_time_series_from_csv
from entropicpy.model import evaluate_model
from entropicpy.savers import save_model_to_json, save_time_series_to_csv


def test_save_and_load_time_series(tmp_path: Path) -> None:
    spec = SystemSpec.create("rossler")
    series = simulate(spec, [1.0, 1.0, 0.0], 50, dt=0.05, noise_sd=0.01)
    file = tmp_path / "rossler.csv"
    save_time_series_to_csv(series, file)
    loaded = load_time_series_from_csv(file)
    np.testing.assert_array_equal(loaded.data, series.data)
    np.testing.assert_array_equal(loaded.truth, series.truth)
    assert loaded.dt == series.dt
    assert loaded.mode == series.mode
    assert loaded.var_names == series.var_names
    assert loaded.truth_degree == 2
    assert loaded.metadata == series.metadata


def test_save_and_load_fitted_model(tmp_path: Path) -> None:
    spec = SystemSpec.create("logistic_map")
    series = simulate(spec, [0.3], 300)
    model = erfit(series, EstimatorConfig(shuffle_count=20), 2)
    file = tmp_path / "model.json"
    save_model_to_json(model, file)
    loaded = load_model_from_json(file)

    np.testing.assert_array_equal(loaded.beta, model.beta)
    assert loaded.supports == model.supports
    assert loaded.terms == model.terms
    assert loaded.config_snapshot == model.config_snapshot
    assert loaded.traces == model.traces
    assert loaded.mode == model.mode
    assert loaded.var_names == model.var_names
    assert loaded.degree == model.degree

    states = np.random.default_rng(0).uniform(size=(20, 1))
    np.testing.assert_array_equal(
        evaluate_model(loaded, states), evaluate_model(model, states)
    )

    again = tmp_path / "again.json"
    save_model_to_json(loaded, again)
    assert again.read_bytes() == file.read_bytes()
