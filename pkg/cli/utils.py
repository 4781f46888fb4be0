"""Enums and small parsers shared by the sub-commands."""

from __future__ import annotations

import math
from enum import Enum
from typing import TYPE_CHECKING, Self

from loguru import logger

from cli.exceptions import ConfigError
from cli.strings import parity_adjusted

if TYPE_CHECKING:
    from argparse import ArgumentParser


class SupportedCommands(Enum):
    """Enum for supported commands."""

    ENUMERATE = "enumerate"
    SAMPLE = "sample"
    FACTORS = "factors"
    REDUCE = "reduce"
    VARIANCE_REPORT = "variance-report"
    TRACE_STATS = "trace-stats"
    CLT_REPORT = "clt-report"
    PROOFCHECK = "proofcheck"
    VERIFY_IDENTITIES = "verify-identities"

    @classmethod
    def get_values(cls) -> list[str]:
        """Sub-command names in registration order."""
        return [command.value for command in cls]

    def __str__(self: Self) -> str:
        return str(self.value)


class DegreeRule(Enum):
    """How ``d`` follows ``n`` in a sweep."""

    FIXED = "fixed"
    HALF = "half"
    N_OVER_LOG = "n-over-log"

    @classmethod
    def get_values(cls) -> list[str]:
        return [rule.value for rule in cls]

    def __str__(self: Self) -> str:
        return str(self.value)


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"

    @classmethod
    def get_values(cls) -> list[str]:
        return [fmt.value for fmt in cls]

    def __str__(self: Self) -> str:
        return str(self.value)


def parse_int_list(text: str | list[int] | tuple[int, ...]) -> tuple[int, ...]:
    """``"64,128,192"`` as a tuple of ints."""
    if isinstance(text, list | tuple):
        return tuple(int(item) for item in text)
    try:
        return tuple(int(item) for item in str(text).split(",") if item.strip())
    except ValueError as e:
        msg = f"Expected a comma-separated list of integers, got {text!r}"
        raise ConfigError(msg) from e


def parse_ensembles(text: str | list[str] | tuple[str, ...]) -> tuple[tuple[int, int], ...]:
    """``"6:3,8:3"`` as ``((6, 3), (8, 3))``."""
    items = text if isinstance(text, list | tuple) else str(text).split(",")
    pairs = []
    for item in items:
        n, sep, d = str(item).strip().partition(":")
        if not sep or not n.isdigit() or not d.isdigit():
            msg = f"Ensembles are written n:d, got {item!r}"
            raise ConfigError(msg)
        pairs.append((int(n), int(d)))
    return tuple(pairs)


def degree_for(n: int, rule: DegreeRule, fixed: int | None = None) -> int:
    """Degree used at ``n``: ``fixed``, ``n/2`` or ``ceil(n/ln n)``; the last two move to ``d+1`` when ``d*n`` is odd.

    Args:
        n (int): Vertex count.
        rule (DegreeRule): The sweep rule.
        fixed (int | None): Degree for ``DegreeRule.FIXED``.

    Returns
    -------
        int: A degree with ``d*n`` even.
    """
    if rule is DegreeRule.FIXED:
        if fixed is None:
            msg = "--d is required with --d-rule fixed"
            raise ConfigError(msg)
        if (n * fixed) % 2:
            msg = f"d={fixed} is infeasible for n={n}: d*n is odd"
            raise ConfigError(msg)
        return fixed
    d = n // 2 if rule is DegreeRule.HALF else math.ceil(n / math.log(n))
    if (n * d) % 2:
        logger.warning(parity_adjusted.format(d=d, n=n, adjusted=d + 1))
        d += 1
    return d


def add_common_options(parser: ArgumentParser) -> None:
    """Options every sub-command takes; all default to ``None`` so that config files and the environment apply."""
    parser.add_argument("--config", help="flat key = value file or JSON object with option defaults")
    parser.add_argument("--threads", type=int, help="worker processes (REGFACTOR_THREADS)")
    parser.add_argument("--chains", type=int, help="independent chains per ensemble (REGFACTOR_CHAINS)")
    parser.add_argument("--seed", type=int, help="unsigned 64-bit seed")
    parser.add_argument("--format", dest="fmt", choices=OutputFormat.get_values(), help="report format")
    parser.add_argument("--out", help="output file; stdout when omitted")
    parser.add_argument("--verbose", action="store_true", help="debug logging")


def add_sweep_options(parser: ArgumentParser) -> None:
    """Ensemble sweep options of the Monte Carlo sub-commands."""
    parser.add_argument("--n-list", dest="n_list", help="comma-separated vertex counts")
    parser.add_argument("--d-rule", dest="d_rule", choices=DegreeRule.get_values(), help="degree as a function of n")
    parser.add_argument("--d", type=int, help="degree for --d-rule fixed")
    parser.add_argument("--samples", type=int, help="sampled graphs per ensemble")
    parser.add_argument("--burn-in", dest="burn_in", type=int, help="proposed swaps before the first sample")
    parser.add_argument("--thin", "--thinning", dest="thinning", type=int, help="proposed swaps between samples")
