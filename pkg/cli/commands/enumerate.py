"""Handle the enumerate command."""

from __future__ import annotations

from typing import TYPE_CHECKING

from loguru import logger

from cli.exceptions import ConfigError
from cli.runner import CommandOutput
from cli.utils import SupportedCommands, add_common_options
from ensemble.enumerate import enumerate_regular
from graphs.io import write_records

if TYPE_CHECKING:
    from argparse import _SubParsersAction

    from cli.config import ExperimentConfig


def add_enumerate_parser(subparsers: _SubParsersAction) -> None:
    """Add the enumerate sub-command."""
    parser = subparsers.add_parser(SupportedCommands.ENUMERATE.value, help="list every graph of G(n, d)")
    add_common_options(parser)
    parser.add_argument("--n", dest="n_list", required=True, help="vertex count")
    parser.add_argument("--d", type=int, required=True, help="degree")


def single_ensemble(config: ExperimentConfig) -> tuple[int, int]:
    """The one ``(n, d)`` pair a per-ensemble sub-command works on."""
    if len(config.n_list) != 1 or config.d is None:
        msg = f"{config.subcommand} needs exactly one --n and a --d"
        raise ConfigError(msg)
    return config.n_list[0], config.d


def handle_enumerate_command(config: ExperimentConfig) -> CommandOutput:
    """Every labelled graph of ``G(n, d)`` as edge-list records, in enumeration order."""
    n, d = single_ensemble(config)
    graphs = list(enumerate_regular(n, d))
    logger.info(f"G({n},{d}) has {len(graphs)} labelled graphs")
    return CommandOutput(text=write_records(graphs), extras={"graph_count": len(graphs)})
