"""Handle the trace-stats command."""

from __future__ import annotations

import math
from functools import partial
from typing import TYPE_CHECKING, Any

from loguru import logger

from cli.exceptions import ConfigError
from cli.runner import CommandOutput, ensemble_spec, farm_samples
from cli.utils import SupportedCommands, add_common_options, add_sweep_options
from factors.walks import MIN_WALK_LENGTH, adjacency_traces
from stats.exceptions import InsufficientDataError
from stats.moments import MomentAccumulator
from stats.normality import EigenvalueReport, diagnose_column, ks_threshold, min_eigenvalue_report

if TYPE_CHECKING:
    from argparse import _SubParsersAction

    import numpy as np
    from numpy.typing import NDArray

    from cli.config import ExperimentConfig

COLUMNS = (
    "n",
    "d",
    "ell",
    "mean",
    "variance",
    "ks_distance",
    "skew",
    "ex_kurtosis",
    "min_eigenvalue",
    "min_eigenvalue_se",
    "positive_definite",
)


def add_trace_stats_parser(subparsers: _SubParsersAction) -> None:
    """Add the trace-stats sub-command."""
    parser = subparsers.add_parser(SupportedCommands.TRACE_STATS.value, help="joint statistics of tr(A^l)")
    add_common_options(parser)
    add_sweep_options(parser)
    parser.add_argument("--ell-max", dest="ell_max", type=int, help="largest walk length, 3 to 6")


def _eigenvalues(samples: NDArray[np.float64]) -> EigenvalueReport:
    try:
        return min_eigenvalue_report(samples)
    except InsufficientDataError as e:
        logger.warning(f"No covariance eigenvalue report: {e}")
        return EigenvalueReport(math.nan, math.nan)


def handle_trace_stats_command(config: ExperimentConfig) -> CommandOutput:
    """Per ensemble and walk length: moments and normality of ``tr(A^l)``, plus the smallest covariance eigenvalue."""
    if not config.n_list:
        msg = "trace-stats needs --n-list"
        raise ConfigError(msg)
    measure = partial(adjacency_traces, max_length=config.ell_max)
    lengths = range(MIN_WALK_LENGTH, config.ell_max + 1)
    rows: list[dict[str, Any]] = []
    for n, d in config.degrees():
        traces = farm_samples(ensemble_spec(config, n, d), config.samples, config.chains, config.threads, measure)
        acc = MomentAccumulator(len(lengths), degree=2, retain=True).extend(traces)
        data = acc.sample_array()
        mean, variance = acc.mean(), acc.variance()
        threshold = ks_threshold(acc.count)
        eigen = _eigenvalues(data)
        for index, ell in enumerate(lengths):
            diagnostics = diagnose_column(data[:, index], threshold)
            rows.append(
                {
                    "n": n,
                    "d": d,
                    "ell": ell,
                    "mean": float(mean[index]),
                    "variance": float(variance[index]),
                    "ks_distance": diagnostics.ks_distance,
                    "skew": diagnostics.skewness,
                    "ex_kurtosis": diagnostics.excess_kurtosis,
                    "min_eigenvalue": eigen.smallest,
                    "min_eigenvalue_se": eigen.standard_error,
                    "positive_definite": eigen.positive_definite,
                },
            )
    return CommandOutput(COLUMNS, rows)
