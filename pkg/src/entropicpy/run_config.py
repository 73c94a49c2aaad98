from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from entropicpy.constants import (
    CSV_ROW_ERROR,
    DEFAULT_DEGREE,
    JSON_FIELD_ERROR,
    NEGATIVE_DEGREE_ERROR,
)
from entropicpy.errors import InvalidInputError, ParseError
from entropicpy.estimators.config import EstimatorConfig


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a fit run depends on; a saved RunConfig reproduces the run.

    Attributes:
        input (str): CSV time series.
        output (str): Model JSON to write.
        degree (int): Polynomial library degree.
        skip_forward (bool): Backward elimination only.
        mode (str | None): "flow" or "map"; None takes the sidecar's kind.
        dt (float | None): Sampling interval; None takes the sidecar's.
        derivatives (str | None): CSV of derivatives, "exact" for the true
            field of a simulated series, None for central differences.
        var_names (tuple[str, ...]): Variable names; empty keeps the file's.
        estimator (EstimatorConfig): Estimator and test settings.
    """

    input: str
    output: str
    degree: int = DEFAULT_DEGREE
    skip_forward: bool = False
    mode: str | None = None
    dt: float | None = None
    derivatives: str | None = None
    var_names: tuple[str, ...] = ()
    estimator: EstimatorConfig = field(default_factory=EstimatorConfig)

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise InvalidInputError(NEGATIVE_DEGREE_ERROR)

    def to_dict(self) -> dict[str, Any]:
        return {
            "input": self.input,
            "output": self.output,
            "degree": self.degree,
            "skip_forward": self.skip_forward,
            "mode": self.mode,
            "dt": self.dt,
            "derivatives": self.derivatives,
            "var_names": list(self.var_names),
            "estimator": self.estimator.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunConfig:
        return cls(
            input=data["input"],
            output=data["output"],
            degree=int(data.get("degree", DEFAULT_DEGREE)),
            skip_forward=bool(data.get("skip_forward", False)),
            mode=data.get("mode"),
            dt=data.get("dt"),
            derivatives=data.get("derivatives"),
            var_names=tuple(data.get("var_names", ())),
            estimator=EstimatorConfig.from_dict(data.get("estimator", {})),
        )


def run_config_path(output: str | Path) -> Path:
    """
    Where the run configuration of a model file is kept, "m.json" ->
    "m.run.json".
    """
    return Path(output).with_suffix(".run.json")


def save_run_config(cfg: RunConfig, filename: str | Path) -> None:
    with open(filename, "w") as file:
        json.dump(cfg.to_dict(), file, sort_keys=True, indent=2)
        file.write("\n")


def load_run_config(file: str | Path) -> RunConfig:
    """
    Loads a run configuration saved by save_run_config.

    Raises:
        ParseError: If the file is not JSON or a required field is missing.
    """
    try:
        with open(file) as f:
            data = json.load(f)
    except json.JSONDecodeError as error:
        raise ParseError(
            CSV_ROW_ERROR.format(file=file, line=error.lineno, reason=error.msg)
        ) from None
    for name in ("input", "output"):
        if name not in data:
            raise ParseError(JSON_FIELD_ERROR.format(file=file, field=name))
    return RunConfig.from_dict(data)
