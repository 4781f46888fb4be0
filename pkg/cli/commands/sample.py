"""Handle the sample command."""

from __future__ import annotations

from typing import TYPE_CHECKING

from cli.commands.enumerate import single_ensemble
from cli.runner import CommandOutput, ensemble_spec, farm_samples
from cli.utils import SupportedCommands, add_common_options
from graphs.io import write_records

if TYPE_CHECKING:
    from argparse import _SubParsersAction

    from cli.config import ExperimentConfig
    from graphs.graph import Graph


def add_sample_parser(subparsers: _SubParsersAction) -> None:
    """Add the sample sub-command."""
    parser = subparsers.add_parser(SupportedCommands.SAMPLE.value, help="draw graphs from G(n, d) by the swap chain")
    add_common_options(parser)
    parser.add_argument("--n", dest="n_list", required=True, help="vertex count")
    parser.add_argument("--d", type=int, required=True, help="degree")
    parser.add_argument("--count", "--samples", dest="samples", type=int, help="number of graphs")
    parser.add_argument("--burn-in", dest="burn_in", type=int, help="proposed swaps before the first sample")
    parser.add_argument("--thin", "--thinning", dest="thinning", type=int, help="proposed swaps between samples")


def keep_graph(g: Graph) -> Graph:
    return g


def handle_sample_command(config: ExperimentConfig) -> CommandOutput:
    """Sampled graphs as edge-list records, chain by chain."""
    n, d = single_ensemble(config)
    graphs = farm_samples(ensemble_spec(config, n, d), config.samples, config.chains, config.threads, keep_graph)
    return CommandOutput(text=write_records(graphs), extras={"graph_count": len(graphs)})
