"""Main function."""

from __future__ import annotations

import sys
from typing import TYPE_CHECKING

from environs import Env
from loguru import logger

if TYPE_CHECKING:
    from collections.abc import Sequence

project_name = "regfactor"
env = Env()
env.read_env()


def configure_logging(verbose: bool = False) -> None:  # noqa: FBT001, FBT002
    """Replace loguru's default sink by one on stderr at ``REGFACTOR_LOG_LEVEL`` (``DEBUG`` with ``--verbose``)."""
    level = "DEBUG" if verbose else env.str("REGFACTOR_LOG_LEVEL", "INFO").upper()
    logger.remove()
    logger.add(sys.stderr, level=level)


def main(argv: Sequence[str] | None = None) -> int:
    """Parse the command line, run the experiment and return its exit status."""
    from cli.config import build_config  # noqa: PLC0415
    from cli.exceptions import ConfigError  # noqa: PLC0415
    from cli.parser import build_parser  # noqa: PLC0415
    from cli.runner import EXIT_INVALID, run_experiment  # noqa: PLC0415

    args = build_parser(project_name).parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = build_config(args)
    except ConfigError as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_INVALID
    return run_experiment(config)


if __name__ == "__main__":
    sys.exit(main())
