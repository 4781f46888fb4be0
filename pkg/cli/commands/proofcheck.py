"""Handle the proofcheck command."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from loguru import logger

from cli.runner import CommandOutput
from cli.utils import SupportedCommands, add_common_options
from proofcheck.battery import find_m0, run_battery
from proofcheck.exceptions import DomainViolationError
from proofcheck.inequalities import DEFAULT_M0, LemmaId

if TYPE_CHECKING:
    from argparse import _SubParsersAction

    from cli.config import ExperimentConfig

COLUMNS = ("lemma", "trials", "violations", "worst_slack", "passed")


def add_proofcheck_parser(subparsers: _SubParsersAction) -> None:
    """Add the proofcheck sub-command."""
    parser = subparsers.add_parser(SupportedCommands.PROOFCHECK.value, help="randomised check of the inequalities")
    add_common_options(parser)
    parser.add_argument(
        "--lemma",
        dest="lemmas",
        help=f"'all' or a comma list of {', '.join(LemmaId.get_values())} (numbered names accepted)",
    )
    parser.add_argument("--trials", type=int, help="random points per inequality")


def selected_lemmas(names: tuple[str, ...]) -> list[LemmaId] | None:
    """``None`` for every inequality, otherwise the named ones in the given order."""
    if any(name.lower() == "all" for name in names):
        return None
    try:
        return [LemmaId(name) for name in names]
    except ValueError as e:
        msg = f"Unknown inequality in {names}: choose from {', '.join(LemmaId.get_values())}"
        raise DomainViolationError(msg) from e


def handle_proofcheck_command(config: ExperimentConfig) -> CommandOutput:
    """Pass/fail table with the worst slack per inequality; every failing inequality counts as a failure."""
    summaries = run_battery(selected_lemmas(config.lemmas), config.trials, config.seed, DEFAULT_M0)
    rows: list[dict[str, Any]] = [
        {
            "lemma": str(summary.lemma),
            "trials": summary.trials,
            "violations": summary.violations,
            "worst_slack": summary.worst_slack,
            "passed": summary.passed,
        }
        for summary in summaries
    ]
    m0 = find_m0()
    logger.info(f"Gaussian band holds from m ~ {m0:.3f}; battery domain starts at {DEFAULT_M0}")
    failures = sum(not summary.passed for summary in summaries)
    return CommandOutput(COLUMNS, rows, failures=failures, extras={"m0": m0, "m0_domain": DEFAULT_M0})
