from __future__ import annotations

import numpy as np
import pytest

from entropicpy.errors import ParseError
from entropicpy.loaders import (
    load_derivatives_from_csv,
    load_matrix_from_csv,
    load_model_from_json,
    load_time_series_from_csv,
    load_time_series_metadata,
)
from entropicpy.support import EMPTY_SUPPORT, SupportSet
from entropicpy.time_series import Mode

CSV = "tests/input_data/csv/"
JSON = "tests/input_data/json/"

# region load_matrix_from_csv


def test_csv_with_header() -> None:
    header, data = load_matrix_from_csv(CSV + "series.csv")
    assert header == ["x", "y"]
    np.testing.assert_array_equal(data, [[1.0, 2.0], [3.0, 4.0], [5.0, 6.5]])


def test_csv_without_header() -> None:
    header, data = load_matrix_from_csv(CSV + "no_header.csv")
    assert header == []
    assert data.shape == (3, 1)


@pytest.mark.parametrize(
    "name", ["bad_width.csv", "bad_number.csv"], ids=["width", "number"]
)
def test_csv_errors_name_the_line(name: str) -> None:
    with pytest.raises(ParseError, match="line 3"):
        load_matrix_from_csv(CSV + name)


@pytest.mark.parametrize("name", ["empty.csv", "header_only.csv"])
def test_csv_without_rows(name: str) -> None:
    with pytest.raises(ParseError, match="empty"):
        load_matrix_from_csv(CSV + name)


def test_missing_file() -> None:
    with pytest.raises(OSError):
        load_matrix_from_csv(CSV + "missing.csv")


# endregion

# region load_time_series_from_csv


def test_time_series_with_sidecar() -> None:
    series = load_time_series_from_csv(CSV + "series.csv")
    assert series.dt == 0.1
    assert series.mode == Mode.FLOW
    assert series.var_names == ("x", "y")
    assert series.truth is None
    assert series.metadata == {
        "noise_sd": 0.0,
        "seed": 7,
        "system": "van_der_pol",
    }
    assert load_time_series_metadata(CSV + "series.csv")["seed"] == 7


def test_time_series_arguments_override_sidecar() -> None:
    series = load_time_series_from_csv(
        CSV + "series.csv", dt=0.5, mode=Mode.MAP, var_names=("p", "q")
    )
    assert series.dt == 0.5
    assert series.mode == Mode.MAP
    assert series.var_names == ("p", "q")


def test_time_series_without_sidecar() -> None:
    series = load_time_series_from_csv(CSV + "no_header.csv")
    assert series.dt is None
    assert series.var_names == ("x1",)
    assert load_time_series_metadata(CSV + "no_header.csv") == {}


def test_derivatives() -> None:
    assert load_derivatives_from_csv(CSV + "series.csv").shape == (3, 2)


# endregion

# region load_model_from_json


def test_model() -> None:
    model = load_model_from_json(JSON + "model.json")
    assert model.var_names == ("u", "v")
    assert model.degree == 1
    assert model.mode == Mode.FLOW
    np.testing.assert_array_equal(
        model.beta, [[0.0, -0.5], [2.0, 0.0], [0.0, 0.0]]
    )
    assert model.supports == (SupportSet([1]), SupportSet([0]))
    assert model.config_snapshot.knn_k == 3
    assert model.config_snapshot.shuffle_count == 20
    assert model.terms[2].exponents == (0, 1)
    assert model.traces == ()


@pytest.mark.parametrize(
    ("name", "message"),
    [
        ("missing_beta.json", "missing field 'beta'"),
        ("not_json.json", "line"),
        ("bad_index.json", "bad_index.json"),
    ],
)
def test_model_errors(name: str, message: str) -> None:
    with pytest.raises(ParseError, match=message):
        load_model_from_json(JSON + name)


# endregion


def test_model_keeps_trailing_empty_dimension() -> None:
    model = load_model_from_json(JSON + "trailing_empty.json")
    assert model.dims == 2
    assert model.beta.shape == (3, 2)
    assert model.supports == (SupportSet([1]), EMPTY_SUPPORT)
    assert not model.beta[:, 1].any()


def test_model_traces_are_loaded_in_nats() -> None:
    model = load_model_from_json(JSON + "trailing_empty.json")
    assert model.config_snapshot.log_base == 2.0
    trace = model.traces[0]
    assert trace.full_information == pytest.approx(2.0 * np.log(2.0))
    assert trace.records[0].objective == pytest.approx(1.5 * np.log(2.0))
    assert trace.records[0].tolerance == pytest.approx(0.5 * np.log(2.0))
    assert model.traces[1].degenerate
