"""Handle the reduce command."""

from __future__ import annotations

from typing import TYPE_CHECKING

from algebra.expansion import expand_subgraph_count
from algebra.expr import FactorExpr, format_expr
from algebra.reduction import reduce_full
from cli.exceptions import ConfigError
from cli.runner import CommandOutput
from cli.utils import SupportedCommands, add_common_options
from graphs.shapes import named_shape

if TYPE_CHECKING:
    from argparse import _SubParsersAction

    from cli.config import ExperimentConfig


def add_reduce_parser(subparsers: _SubParsersAction) -> None:
    """Add the reduce sub-command."""
    parser = subparsers.add_parser(SupportedCommands.REDUCE.value, help="reduce a graph factor on d-regular graphs")
    add_common_options(parser)
    parser.add_argument("--shape", dest="shapes", required=True, help="edge list such as 0-1,1-2 or a name such as P4")
    parser.add_argument(
        "--count",
        action="store_const",
        const=True,
        help="reduce the subgraph count X_H instead of the factor gamma_H",
    )


def handle_reduce_command(config: ExperimentConfig) -> CommandOutput:
    """The reduced expression in its stable text form."""
    if not config.shapes:
        msg = "reduce needs --shape"
        raise ConfigError(msg)
    h = named_shape(",".join(config.shapes))
    expression = expand_subgraph_count(h) if config.count else FactorExpr.of(h)
    return CommandOutput(text=format_expr(reduce_full(expression)))
