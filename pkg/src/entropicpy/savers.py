# ruff: noqa: N803
from __future__ import annotations

import csv
import json
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np

from entropicpy._typing import Matrix
from entropicpy.constants import MODEL_FORMAT_VERSION
from entropicpy.estimators.config import EstimatorConfig
from entropicpy.model import ERTrace, FittedModel, model_equations
from entropicpy.time_series import TimeSeries


def metadata_path(file: str | Path) -> Path:
    """
    Path of the metadata sidecar of a CSV time series, "run.csv" ->
    "run.meta.json".
    """
    return Path(file).with_suffix(".meta.json")


def save_matrix_to_csv(
    data: Matrix, header: Sequence[str], filename: str | Path
) -> None:
    """
    Saves a matrix as CSV with a header row; floats are written with full
    precision.

    Args:
        data (Matrix): The rows to write.
        header (Sequence[str]): One name per column.
        filename (str | Path): The path to the CSV file.

    Returns:
        None
    """
    with open(filename, "w", newline="") as file:
        writer = csv.writer(file)
        writer.writerow(header)
        for row in np.asarray(data, dtype=np.float64):
            writer.writerow([repr(float(value)) for value in row])


def _prepare_time_series_metadata(X: TimeSeries) -> dict[str, Any]:
    metadata = dict(X.metadata)
    metadata.update(
        {
            "dt": X.dt,
            "kind": X.mode.value,
            "var_names": list(X.var_names),
            "truth": None if X.truth is None else X.truth.tolist(),
            "truth_degree": X.truth_degree,
        }
    )
    return metadata


def save_time_series_to_csv(X: TimeSeries, filename: str | Path) -> Path:
    """
    Saves a time series as CSV (header row of variable names, one
    observation per line) with a JSON metadata sidecar holding dt, the kind,
    the truth matrix and the simulation settings.

    Args:
        X (TimeSeries): The series to save.
        filename (str | Path): The path to the CSV file.

    Returns:
        Path: The path of the metadata sidecar.
    """
    save_matrix_to_csv(X.data, X.var_names, filename)
    sidecar = metadata_path(filename)
    with open(sidecar, "w") as file:
        json.dump(_prepare_time_series_metadata(X), file, sort_keys=True)
    return sidecar


def _prepare_trace_dict(
    trace: ERTrace, cfg: EstimatorConfig
) -> dict[str, Any]:
    # Information values are reported in the configured log base.
    full = trace.full_information
    return {
        "degenerate": trace.degenerate,
        "full_information": None if full is None else cfg.in_log_base(full),
        "records": [
            {
                "stage": record.stage.value,
                "index": record.index,
                "objective": cfg.in_log_base(record.objective),
                "tolerance": cfg.in_log_base(record.tolerance),
                "halted": record.halted,
                "support": list(record.support),
            }
            for record in trace.records
        ],
    }


def prepare_model_dict(m: FittedModel) -> dict[str, Any]:
    """
    Prepares the model to be saved to a JSON file.

    Coefficients are stored as sparse (dimension, term index, value)
    triplets, terms as exponent lists (or labels for user supplied columns).

    Args:
        m (FittedModel): The model to prepare.

    Returns:
        dict: The prepared model.
    """
    return {
        "version": MODEL_FORMAT_VERSION,
        "mode": m.mode.value,
        "degree": m.degree,
        "var_names": list(m.var_names),
        "config": m.config_snapshot.to_dict(),
        "terms": [
            list(term.exponents) if term.is_polynomial else term.label
            for term in m.terms
        ],
        "supports": [list(support.indices) for support in m.supports],
        "beta": [
            [j, index, float(m.beta[index, j])]
            for j, support in enumerate(m.supports)
            for index in support.ascending()
        ],
        "equations": model_equations(m),
        "information_unit": m.config_snapshot.information_unit,
        "traces": [
            _prepare_trace_dict(trace, m.config_snapshot) for trace in m.traces
        ],
    }


def save_model_to_json(m: FittedModel, filename: str | Path) -> None:
    """
    Saves the model to a JSON file; equal models give identical files.

    Args:
        m (FittedModel): The model to save.
        filename (str | Path): The path to the JSON file.

    Returns:
        None
    """
    with open(filename, "w") as file:
        json.dump(prepare_model_dict(m), file, sort_keys=True, indent=2)
        file.write("\n")
