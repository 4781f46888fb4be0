"""Handle the clt-report command."""

from __future__ import annotations

import math
from functools import partial
from itertools import combinations
from typing import TYPE_CHECKING, Any

from loguru import logger

from cli.exceptions import ConfigError
from cli.runner import CommandOutput, ensemble_spec, farm_samples
from cli.utils import SupportedCommands, add_common_options, add_sweep_options
from factors.evaluator import FactorEvaluator
from factors.field import EdgeField
from factors.gamma import gamma, normalization_constants
from graphs.shapes import named_shape
from stats.moments import MomentAccumulator
from stats.normality import normality_report

if TYPE_CHECKING:
    from argparse import _SubParsersAction

    from cli.config import ExperimentConfig
    from graphs.graph import Graph

DEFAULT_SHAPES = ("C3", "C4")
MEAN_TOLERANCE_SE = 3

COLUMNS = (
    "n",
    "d",
    "shape",
    "partner",
    "mean",
    "expectation",
    "mean_se",
    "mean_within_3se",
    "variance",
    "ks_distance",
    "ks_threshold",
    "skew",
    "skew_se",
    "ex_kurtosis",
    "kurtosis_se",
    "correlation",
)


def add_clt_report_parser(subparsers: _SubParsersAction) -> None:
    """Add the clt-report sub-command."""
    parser = subparsers.add_parser(
        SupportedCommands.CLT_REPORT.value,
        help="normality and correlations of normalised graph factors",
    )
    add_common_options(parser)
    add_sweep_options(parser)
    parser.add_argument("--shapes", "--shape", dest="shapes", help="comma-separated shapes, C3,C4 when omitted")


def normalized_factors(g: Graph, shapes: tuple[Graph, ...], d: int) -> tuple[float, ...]:
    """``(gamma_H(G) - E_H) / sigma_H`` for every shape, sharing one evaluator."""
    evaluator = FactorEvaluator(EdgeField(g, d))
    values = []
    for h in shapes:
        value = gamma(g, h, d, evaluator=evaluator).normalized
        if value is None:
            msg = f"No normalisation for {h} on {g.n} vertices"
            raise ConfigError(msg)
        values.append(value)
    return tuple(values)


def _shape_rows(
    n: int,
    d: int,
    names: tuple[str, ...],
    shapes: tuple[Graph, ...],
    acc: MomentAccumulator,
) -> list[dict[str, Any]]:
    report = normality_report(acc)
    mean, variance = acc.mean(), acc.variance()
    rows: list[dict[str, Any]] = []
    for index, (name, h) in enumerate(zip(names, shapes, strict=True)):
        shift, scale = normalization_constants(h, n)
        diagnostics = report.coordinates[index]
        mean_se = scale * math.sqrt(float(variance[index]) / acc.count)
        raw_mean = shift + scale * float(mean[index])
        rows.append(
            dict.fromkeys(COLUMNS)
            | {
                "n": n,
                "d": d,
                "shape": name,
                "mean": raw_mean,
                "expectation": shift,
                "mean_se": mean_se,
                "mean_within_3se": abs(raw_mean - shift) <= MEAN_TOLERANCE_SE * mean_se,
                "variance": float(variance[index]),
                "ks_distance": diagnostics.ks_distance,
                "ks_threshold": diagnostics.ks_threshold,
                "skew": diagnostics.skewness,
                "skew_se": diagnostics.skewness_se,
                "ex_kurtosis": diagnostics.excess_kurtosis,
                "kurtosis_se": diagnostics.kurtosis_se,
            },
        )
    for first, second in combinations(range(len(names)), 2):
        rows.append(
            dict.fromkeys(COLUMNS)
            | {
                "n": n,
                "d": d,
                "shape": names[first],
                "partner": names[second],
                "correlation": float(report.correlation[first, second]),
            },
        )
    return rows


def handle_clt_report_command(config: ExperimentConfig) -> CommandOutput:
    """Per ensemble: mean check and normality of every normalised factor, then the correlation of every pair."""
    if not config.n_list:
        msg = "clt-report needs --n-list"
        raise ConfigError(msg)
    names = config.shapes or DEFAULT_SHAPES
    shapes = tuple(named_shape(name.replace(";", ",")) for name in names)
    rows: list[dict[str, Any]] = []
    for n, d in config.degrees():
        for h in shapes:
            normalization_constants(h, n)
        measure = partial(normalized_factors, shapes=shapes, d=d)
        values = farm_samples(ensemble_spec(config, n, d), config.samples, config.chains, config.threads, measure)
        acc = MomentAccumulator(len(shapes), degree=2, retain=True).extend(values)
        logger.debug(f"G({n},{d}): {acc.count} samples of {len(shapes)} normalised factors")
        rows.extend(_shape_rows(n, d, names, shapes, acc))
    return CommandOutput(COLUMNS, rows)
