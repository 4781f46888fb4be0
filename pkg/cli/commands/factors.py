"""Handle the factors command."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from cli.exceptions import ConfigError, IoFailureError
from cli.runner import CommandOutput
from cli.utils import SupportedCommands, add_common_options
from factors.evaluator import FactorEvaluator
from factors.field import EdgeField
from factors.gamma import gamma
from graphs.graph import Graph
from graphs.io import read_records
from graphs.shapes import named_shape

if TYPE_CHECKING:
    from argparse import _SubParsersAction

    from cli.config import ExperimentConfig

COLUMNS = ("graph", "shape", "raw", "expectation_shift", "scale", "normalized", "exact_value")


def add_factors_parser(subparsers: _SubParsersAction) -> None:
    """Add the factors sub-command."""
    parser = subparsers.add_parser(SupportedCommands.FACTORS.value, help="graph factors of every graph in a file")
    add_common_options(parser)
    parser.add_argument("--graph", "--graphs", dest="graph_file", required=True, help="edge-list records")
    parser.add_argument("--shapes", "--shape", dest="shapes", required=True, help="comma-separated shapes, e.g. C3,C4")
    parser.add_argument("--d", type=int, help="degree; the edge density is used when omitted")
    parser.add_argument("--exact", action="store_const", const=True, help="exact values in Q(sqrt(p(1-p)))")


def handle_factors_command(config: ExperimentConfig) -> CommandOutput:
    """One row per (graph, shape) with the raw factor and its normalisation where defined."""
    if config.graph_file is None or not config.shapes:
        msg = "factors needs --graph and --shapes"
        raise ConfigError(msg)
    try:
        text = config.graph_file.read_text(encoding="utf-8")
    except OSError as e:
        msg = f"Unable to read {config.graph_file}: {e}"
        raise IoFailureError(msg) from e
    shapes = [named_shape(name.replace(";", ",")) for name in config.shapes]
    rows: list[dict[str, Any]] = []
    for index, g in enumerate(read_records(text)):
        if not isinstance(g, Graph):
            msg = f"Record {index} is a multigraph; factors are defined on simple graphs"
            raise ConfigError(msg)
        evaluator = FactorEvaluator(EdgeField(g, config.d), exact=config.exact)
        for name, h in zip(config.shapes, shapes, strict=True):
            value = gamma(g, h, config.d, evaluator=evaluator)
            exact_value = str(evaluator.gamma_raw(h)) if config.exact else ""
            rows.append(
                {
                    "graph": index,
                    "shape": name,
                    "raw": value.raw,
                    "expectation_shift": value.expectation_shift,
                    "scale": value.scale,
                    "normalized": value.normalized,
                    "exact_value": exact_value,
                },
            )
    return CommandOutput(COLUMNS, rows)
