"""
Command line front end: simulate benchmark data, fit models, integrate them
and score them against the known truth.
"""

from __future__ import annotations

import argparse
import json
import logging
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from entropicpy.__about__ import __version__
from entropicpy.bench.generators import (
    exact_derivatives,
    simulate,
    system_from_metadata,
)
from entropicpy.bench.scoring import score_support_recovery
from entropicpy.bench.systems import (
    SystemName,
    SystemSpec,
    default_initial_condition,
    truth_matrix,
)
from entropicpy.constants import (
    DEFAULT_DEGREE,
    EXIT_IO,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    FIT_PATHS_ERROR,
    HORIZON_ERROR,
    STATE_LENGTH_ERROR,
)
from entropicpy.entropic_regression import erfit
from entropicpy.errors import (
    EntropicError,
    InvalidInputError,
    ParseError,
    ShapeError,
)
from entropicpy.estimators.config import EstimatorConfig
from entropicpy.estimators.derivatives import SuppliedDerivative
from entropicpy.loaders import (
    load_derivatives_from_csv,
    load_matrix_from_csv,
    load_model_from_json,
    load_time_series_from_csv,
)
from entropicpy.model import integrate_model, model_equations
from entropicpy.run_config import (
    RunConfig,
    load_run_config,
    run_config_path,
    save_run_config,
)
from entropicpy.savers import (
    save_matrix_to_csv,
    save_model_to_json,
    save_time_series_to_csv,
)
from entropicpy.time_series import Mode, TimeSeries

logger = logging.getLogger(__name__)

EXACT_DERIVATIVES = "exact"


class _UsageError(Exception):
    """
    Invalid arguments or configuration, reported with the usage exit code.
    """


@contextmanager
def _arguments() -> Iterator[None]:
    try:
        yield
    except InvalidInputError as error:
        raise _UsageError(str(error)) from error


def _floats(text: str) -> list[float]:
    try:
        return [float(value) for value in text.split(",") if value.strip()]
    except ValueError:
        message = f"expected comma separated numbers, got {text!r}"
        raise argparse.ArgumentTypeError(message) from None


def _names(text: str) -> tuple[str, ...]:
    return tuple(name.strip() for name in text.split(",") if name.strip())


def _parameter(text: str) -> tuple[str, float]:
    name, separator, value = text.partition("=")
    try:
        if not separator:
            raise ValueError(text)
        return name.strip(), float(value)
    except ValueError:
        message = f"expected name=value, got {text!r}"
        raise argparse.ArgumentTypeError(message) from None


# region simulate


def cmd_simulate(args: argparse.Namespace) -> int:
    params = dict(args.param or ())
    if args.node_count is not None:
        params["node_count"] = args.node_count
    if args.coupling is not None:
        params["coupling"] = args.coupling
    with _arguments():
        spec = SystemSpec.create(args.system, params)
    x0 = (
        default_initial_condition(spec, args.seed)
        if args.x0 is None
        else args.x0
    )
    with _arguments():
        series = simulate(
            spec,
            x0,
            args.n,
            dt=args.dt,
            noise_sd=args.noise,
            seed=args.seed,
            transient=args.transient,
            degree=args.degree,
        )
    sidecar = save_time_series_to_csv(series, args.output)
    logger.info("wrote %s and %s", args.output, sidecar)
    return EXIT_OK


# endregion

# region fit


def _run_config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.config is not None:
        cfg = load_run_config(args.config)
        if args.output is not None:
            cfg = RunConfig.from_dict({**cfg.to_dict(), "output": args.output})
        return cfg
    if args.input is None or args.output is None:
        raise InvalidInputError(FIT_PATHS_ERROR)
    estimator = EstimatorConfig(
        knn_k=args.knn,
        shuffle_count=args.shuffles,
        alpha=args.alpha,
        rng_seed=args.seed,
        jitter_scale=args.jitter,
        n_jobs=args.n_jobs,
        log_base=args.log_base,
    )
    return RunConfig(
        input=args.input,
        output=args.output,
        degree=args.degree,
        skip_forward=args.skip_forward,
        mode=args.mode,
        dt=args.dt,
        derivatives=args.derivatives,
        var_names=args.var_names or (),
        estimator=estimator,
    )


def _supplied_derivatives(
    cfg: RunConfig, series: TimeSeries
) -> SuppliedDerivative | None:
    if cfg.derivatives is None or series.mode == Mode.MAP:
        return None
    if cfg.derivatives == EXACT_DERIVATIVES:
        return exact_derivatives(system_from_metadata(series), series.data)
    return load_derivatives_from_csv(cfg.derivatives)


def cmd_fit(args: argparse.Namespace) -> int:
    with _arguments():
        cfg = _run_config_from_args(args)
        series = load_time_series_from_csv(
            cfg.input,
            dt=cfg.dt,
            mode=None if cfg.mode is None else Mode(cfg.mode),
            var_names=cfg.var_names or None,
        )
    model = erfit(
        series,
        cfg.estimator,
        cfg.degree,
        skip_forward=cfg.skip_forward,
        derivatives=_supplied_derivatives(cfg, series),
    )
    save_model_to_json(model, cfg.output)
    save_run_config(cfg, run_config_path(cfg.output))
    for equation in model_equations(model):
        print(equation)
    return EXIT_OK


# endregion

# region eval


def cmd_eval(args: argparse.Namespace) -> int:
    model = load_model_from_json(args.model)
    if args.horizon < 0:
        raise _UsageError(HORIZON_ERROR)
    trajectory = integrate_model(model, args.x0, args.horizon, args.dt)
    step = 1.0 if model.mode == Mode.MAP else args.dt
    times = step * np.arange(trajectory.shape[0])
    header = ["t", *model.var_names]
    columns = [times[:, None], trajectory]
    if args.compare is not None:
        reference = load_matrix_from_csv(args.compare)[1]
        if reference.shape[1] != model.dims:
            raise ShapeError(
                STATE_LENGTH_ERROR.format(
                    got=reference.shape[1], expected=model.dims
                )
            )
        rows = min(reference.shape[0], trajectory.shape[0])
        error = np.max(np.abs(trajectory[:rows] - reference[:rows]), axis=1)
        columns = [column[:rows] for column in columns]
        columns.append(error[:, None])
        header.append("error")
        logger.info("largest deviation %.6g", float(error.max()))
    save_matrix_to_csv(np.hstack(columns), header, args.output)
    return EXIT_OK


# endregion

# region score


def cmd_score(args: argparse.Namespace) -> int:
    model = load_model_from_json(args.model)
    series = load_time_series_from_csv(args.truth)
    if series.truth is None or series.truth.shape != model.beta.shape:
        truth = truth_matrix(system_from_metadata(series), model.degree)
    else:
        truth = series.truth
    score = score_support_recovery(model, truth)
    text = json.dumps(score.to_dict(), sort_keys=True, indent=2)
    if args.output is not None:
        Path(args.output).write_text(text + "\n")
    print(text)
    return EXIT_OK


# endregion


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entropicpy",
        description="Sparse system identification by entropic regression.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress (-v) or every search decision (-vv).",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sim = commands.add_parser("simulate", help="Generate benchmark data.")
    sim.add_argument(
        "--system",
        required=True,
        choices=[name.value for name in SystemName],
    )
    sim.add_argument("--n", type=int, default=1000, help="Observations.")
    sim.add_argument("--dt", type=float, default=0.01)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--noise", type=float, default=0.0)
    sim.add_argument("--transient", type=int, default=0)
    sim.add_argument("--x0", type=_floats, default=None)
    sim.add_argument(
        "--param", type=_parameter, action="append", metavar="NAME=VALUE"
    )
    sim.add_argument("--node-count", type=int, default=None)
    sim.add_argument("--coupling", type=float, default=None)
    sim.add_argument(
        "--degree", type=int, default=None, help="Degree of the truth matrix."
    )
    sim.add_argument("-o", "--output", required=True)
    sim.set_defaults(handler=cmd_simulate)

    fit = commands.add_parser("fit", help="Identify a model from a CSV file.")
    fit.add_argument("-i", "--input")
    fit.add_argument("-o", "--output")
    fit.add_argument("--config", help="Rerun from a saved run configuration.")
    fit.add_argument("--degree", type=int, default=DEFAULT_DEGREE)
    fit.add_argument("--mode", choices=[mode.value for mode in Mode])
    fit.add_argument("--dt", type=float, default=None)
    fit.add_argument(
        "--derivatives",
        help=f"CSV of derivatives, or {EXACT_DERIVATIVES!r} for the true "
        "field of a simulated series.",
    )
    defaults = EstimatorConfig()
    fit.add_argument("--knn", type=int, default=defaults.knn_k)
    fit.add_argument("--shuffles", type=int, default=defaults.shuffle_count)
    fit.add_argument("--alpha", type=float, default=defaults.alpha)
    fit.add_argument("--seed", type=int, default=defaults.rng_seed)
    fit.add_argument("--jitter", type=float, default=defaults.jitter_scale)
    fit.add_argument("--n-jobs", type=int, default=defaults.n_jobs)
    fit.add_argument(
        "--log-base",
        type=float,
        default=defaults.log_base,
        help="Base of the reported information values.",
    )
    fit.add_argument("--skip-forward", action="store_true")
    fit.add_argument("--var-names", type=_names, default=None)
    fit.set_defaults(handler=cmd_fit)

    ev = commands.add_parser("eval", help="Integrate a fitted model.")
    ev.add_argument("--model", required=True)
    ev.add_argument("--x0", type=_floats, required=True)
    ev.add_argument("--horizon", type=float, required=True)
    ev.add_argument("--dt", type=float, default=0.01)
    ev.add_argument("--compare", help="Reference trajectory CSV.")
    ev.add_argument("-o", "--output", required=True)
    ev.set_defaults(handler=cmd_eval)

    score = commands.add_parser("score", help="Compare a model with truth.")
    score.add_argument("--model", required=True)
    score.add_argument(
        "--truth", required=True, help="Simulated CSV with its sidecar."
    )
    score.add_argument("-o", "--output")
    score.set_defaults(handler=cmd_score)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(verbosity, 2)]
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s"
    )
    logging.captureWarnings(True)


def main(argv: Sequence[str] | None = None) -> int:
    """
    Runs the command line and returns the exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return EXIT_USAGE if error.code not in (0, None) else EXIT_OK
    _configure_logging(args.verbose)
    try:
        return int(args.handler(args))
    except _UsageError as error:
        logger.error("%s", error)
        return EXIT_USAGE
    except ParseError as error:
        logger.error("%s", error)
        return EXIT_PARSE
    except EntropicError as error:
        logger.error("%s", error)
        return EXIT_NUMERICAL
    except OSError as error:
        logger.error("%s", error)
        return EXIT_IO
