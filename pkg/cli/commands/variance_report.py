"""Handle the variance-report command."""

from __future__ import annotations

from functools import partial
from typing import TYPE_CHECKING, Any

from loguru import logger

from cli.exceptions import ConfigError
from cli.runner import CommandOutput, ensemble_spec, farm_samples
from cli.utils import SupportedCommands, add_common_options, add_sweep_options
from graphs.counting import count_shape
from graphs.shapes import named_shape
from stats.moments import MomentAccumulator
from stats.normality import diagnose_column, ks_threshold
from stats.variance import predicted_variance

if TYPE_CHECKING:
    from argparse import _SubParsersAction

    from cli.config import ExperimentConfig

COLUMNS = ("n", "d", "p", "empirical_var", "predicted_var", "ratio", "ks_distance", "skew", "ex_kurtosis")


def add_variance_report_parser(subparsers: _SubParsersAction) -> None:
    """Add the variance-report sub-command."""
    parser = subparsers.add_parser(
        SupportedCommands.VARIANCE_REPORT.value,
        help="empirical against predicted variance of a subgraph count",
    )
    add_common_options(parser)
    add_sweep_options(parser)
    parser.add_argument("--shape", dest="shapes", required=True, help="shape name or edge list")


def handle_variance_report_command(config: ExperimentConfig) -> CommandOutput:
    """One row per ensemble of the sweep: sample variance of ``X_H`` next to its leading-order prediction."""
    if not config.shapes or not config.n_list:
        msg = "variance-report needs --shape and --n-list"
        raise ConfigError(msg)
    h = named_shape(",".join(config.shapes))
    measure = partial(count_shape, pattern=h)
    rows: list[dict[str, Any]] = []
    for n, d in config.degrees():
        prediction = predicted_variance(h, n, d)
        counts = farm_samples(ensemble_spec(config, n, d), config.samples, config.chains, config.threads, measure)
        acc = MomentAccumulator(1, degree=4, retain=True).extend((count,) for count in counts)
        empirical = float(acc.variance()[0])
        diagnostics = diagnose_column(acc.sample_array()[:, 0], ks_threshold(acc.count))
        logger.debug(f"G({n},{d}): {prediction.regime} regime, {acc.count} samples")
        rows.append(
            {
                "n": n,
                "d": d,
                "p": d / (n - 1),
                "empirical_var": empirical,
                "predicted_var": prediction.value,
                "ratio": empirical / prediction.value,
                "ks_distance": diagnostics.ks_distance,
                "skew": diagnostics.skewness,
                "ex_kurtosis": diagnostics.excess_kurtosis,
            },
        )
    return CommandOutput(COLUMNS, rows)
