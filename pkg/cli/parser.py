"""Command-line parser with one sub-parser per experiment."""

from __future__ import annotations

import argparse

from cli.commands.clt_report import add_clt_report_parser
from cli.commands.enumerate import add_enumerate_parser
from cli.commands.factors import add_factors_parser
from cli.commands.proofcheck import add_proofcheck_parser
from cli.commands.reduce import add_reduce_parser
from cli.commands.sample import add_sample_parser
from cli.commands.trace_stats import add_trace_stats_parser
from cli.commands.variance_report import add_variance_report_parser
from cli.commands.verify_identities import add_verify_identities_parser


def build_parser(prog: str = "regfactor") -> argparse.ArgumentParser:
    """The ``regfactor`` parser; the chosen sub-command lands in ``args.command``."""
    parser = argparse.ArgumentParser(prog=prog, description="Graph factors of random regular graphs.")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")
    add_enumerate_parser(subparsers)
    add_sample_parser(subparsers)
    add_factors_parser(subparsers)
    add_reduce_parser(subparsers)
    add_variance_report_parser(subparsers)
    add_trace_stats_parser(subparsers)
    add_clt_report_parser(subparsers)
    add_proofcheck_parser(subparsers)
    add_verify_identities_parser(subparsers)
    return parser
