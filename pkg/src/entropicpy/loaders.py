from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any

import numpy as np

from entropicpy._typing import Matrix
from entropicpy.basis import TermDescriptor
from entropicpy.constants import (
    CSV_EMPTY_ERROR,
    CSV_ROW_ERROR,
    JSON_FIELD_ERROR,
    MODEL_CONTENT_ERROR,
)
from entropicpy.errors import EntropicError, ParseError
from entropicpy.estimators.config import EstimatorConfig
from entropicpy.model import ERTrace, FittedModel, Stage, TraceRecord
from entropicpy.savers import metadata_path
from entropicpy.support import SupportSet
from entropicpy.time_series import Mode, TimeSeries

_MODEL_FIELDS = ("version", "config", "terms", "beta")


def _parse_float(text: str) -> float:
    value = float(text)
    if not np.isfinite(value):
        raise ValueError(text)
    return value


def load_matrix_from_csv(file: str | Path) -> tuple[list[str], Matrix]:
    """
    Loads a numeric CSV file. A first row that is not numeric is returned
    as the header.

    Args:
        file (str | Path): The path to the CSV file.

    Returns:
        tuple[list[str], Matrix]: The header (empty if absent) and the rows.

    Raises:
        ParseError: On an empty file, a row of the wrong width or a value
            that is not a finite number; the message names the line.
    """
    header: list[str] = []
    rows: list[list[float]] = []
    with open(file, newline="") as f:
        reader = csv.reader(f)
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if not rows and not header:
                try:
                    rows.append([_parse_float(cell) for cell in row])
                except ValueError:
                    header = [cell.strip() for cell in row]
                continue
            width = len(header) if header else len(rows[0])
            if len(row) != width:
                raise ParseError(
                    CSV_ROW_ERROR.format(
                        file=file,
                        line=line,
                        reason=f"expected {width} fields, got {len(row)}",
                    )
                )
            try:
                rows.append([_parse_float(cell) for cell in row])
            except ValueError as error:
                raise ParseError(
                    CSV_ROW_ERROR.format(
                        file=file, line=line, reason=f"bad number {error}"
                    )
                ) from None
    if not rows:
        raise ParseError(CSV_EMPTY_ERROR.format(file=file))
    return header, np.array(rows, dtype=np.float64)


def load_time_series_metadata(file: str | Path) -> dict[str, Any]:
    """
    Loads the metadata sidecar of a CSV time series, or an empty dict when
    there is none.
    """
    sidecar = metadata_path(file)
    if not sidecar.exists():
        return {}
    try:
        with open(sidecar) as f:
            return dict(json.load(f))
    except json.JSONDecodeError as error:
        raise ParseError(
            CSV_ROW_ERROR.format(
                file=sidecar, line=error.lineno, reason=error.msg
            )
        ) from None


def load_time_series_from_csv(
    file: str | Path,
    dt: float | None = None,
    mode: Mode | None = None,
    var_names: tuple[str, ...] | None = None,
) -> TimeSeries:
    """
    Loads a time series saved by save_time_series_to_csv (or any numeric
    CSV). Values given as arguments take precedence over the sidecar.

    Args:
        file (str | Path): The path to the CSV file.
        dt (float | None): Sampling interval.
        mode (Mode | None): Flow or map.
        var_names (tuple[str, ...] | None): Variable names.

    Returns:
        TimeSeries: The loaded series.

    Raises:
        ParseError: If the file is malformed.
    """
    header, data = load_matrix_from_csv(file)
    metadata = load_time_series_metadata(file)
    kind = mode if mode is not None else Mode(metadata.get("kind", "flow"))
    names = var_names or tuple(header) or tuple(metadata.get("var_names", ()))
    truth = metadata.get("truth")
    extra = {
        key: value
        for key, value in metadata.items()
        if key not in ("dt", "kind", "var_names", "truth", "truth_degree")
    }
    return TimeSeries(
        data,
        dt=dt if dt is not None else metadata.get("dt"),
        mode=kind,
        var_names=names,
        truth=None if truth is None else np.asarray(truth, dtype=np.float64),
        truth_degree=metadata.get("truth_degree"),
        metadata=extra,
    )


def _load_term(term: list[int] | str) -> TermDescriptor:
    if isinstance(term, str):
        return TermDescriptor(label=term)
    return TermDescriptor(tuple(int(power) for power in term))


def _load_trace(data: dict[str, Any], cfg: EstimatorConfig) -> ERTrace:
    full = data.get("full_information")
    return ERTrace(
        tuple(
            TraceRecord(
                Stage(record["stage"]),
                int(record["index"]),
                cfg.in_nats(float(record["objective"])),
                cfg.in_nats(float(record["tolerance"])),
                bool(record["halted"]),
                tuple(record["support"]),
            )
            for record in data.get("records", ())
        ),
        bool(data.get("degenerate", False)),
        None if full is None else cfg.in_nats(float(full)),
    )


def load_model_from_json(file: str | Path) -> FittedModel:
    """
    Loads a model saved by save_model_to_json.

    Args:
        file (str | Path): The path to the JSON file.

    Returns:
        FittedModel: The loaded model.

    Raises:
        ParseError: If the file is not valid JSON or a field is missing.
    """
    try:
        with open(file) as f:
            data = json.load(f)
    except json.JSONDecodeError as error:
        raise ParseError(
            CSV_ROW_ERROR.format(file=file, line=error.lineno, reason=error.msg)
        ) from None
    for field in _MODEL_FIELDS:
        if field not in data:
            raise ParseError(JSON_FIELD_ERROR.format(file=file, field=field))

    try:
        terms = tuple(_load_term(term) for term in data["terms"])
        config = EstimatorConfig.from_dict(data["config"])
        var_names = tuple(data.get("var_names", ()))
        if var_names:
            dims = len(var_names)
        elif "supports" in data:
            dims = len(data["supports"])
        else:
            dims = 1 + max((int(t[0]) for t in data["beta"]), default=0)
        beta = np.zeros((len(terms), dims))
        for j, index, value in data["beta"]:
            beta[int(index), int(j)] = float(value)
        if "supports" in data:
            supports = tuple(SupportSet(s) for s in data["supports"])
        else:
            supports = tuple(
                SupportSet(int(i) for i in np.nonzero(beta[:, j])[0])
                for j in range(dims)
            )
        return FittedModel(
            beta=beta,
            supports=supports,
            terms=terms,
            config_snapshot=config,
            traces=tuple(
                _load_trace(t, config) for t in data.get("traces", ())
            ),
            mode=Mode(data.get("mode", "flow")),
            var_names=var_names,
            degree=data.get("degree"),
        )
    except (EntropicError, IndexError, TypeError, ValueError) as error:
        raise ParseError(
            MODEL_CONTENT_ERROR.format(file=file, reason=error)
        ) from None


def load_derivatives_from_csv(file: str | Path) -> Matrix:
    """
    Loads precomputed derivatives, one row per observation.
    """
    return load_matrix_from_csv(file)[1]
