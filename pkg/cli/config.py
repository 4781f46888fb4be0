"""Effective experiment configuration: defaults, config file, environment, flags."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path
from typing import TYPE_CHECKING, Any, Self

from loguru import logger

from cli.exceptions import ConfigError
from cli.utils import DegreeRule, OutputFormat, SupportedCommands, degree_for, parse_ensembles, parse_int_list

if TYPE_CHECKING:
    from argparse import Namespace
    from collections.abc import Callable

MAX_SEED = (1 << 64) - 1


def _boolean(value: str | bool) -> bool:
    if isinstance(value, bool):
        return value
    lowered = str(value).strip().lower()
    if lowered in {"1", "true", "yes", "on"}:
        return True
    if lowered in {"0", "false", "no", "off"}:
        return False
    msg = f"Expected a boolean, got {value!r}"
    raise ConfigError(msg)


def _optional_int(value: str | int | None) -> int | None:
    return None if value in (None, "") else int(value)  # type: ignore[arg-type]


def _names(value: str | list[str] | tuple[str, ...]) -> tuple[str, ...]:
    if isinstance(value, list | tuple):
        return tuple(str(item).strip() for item in value)
    return tuple(item.strip() for item in str(value).split(",") if item.strip())


def _optional_path(value: str | Path | None) -> Path | None:
    return None if value in (None, "") else Path(value)  # type: ignore[arg-type]


@dataclass(frozen=True)
class ExperimentConfig(object):
    """Everything a run depends on.

    With ``seed``, ``chains`` and the ensemble parameters fixed, outputs do not depend on ``threads``: work is split
    by chain index and merged in chain order.
    """

    subcommand: SupportedCommands
    n_list: tuple[int, ...] = ()
    d: int | None = None
    d_rule: DegreeRule | None = None
    shapes: tuple[str, ...] = ()
    samples: int = 100
    seed: int = 0
    threads: int = 1
    chains: int = 8
    out: Path | None = None
    fmt: OutputFormat = OutputFormat.CSV
    graph_file: Path | None = None
    exact: bool = False
    count: bool = False
    lemmas: tuple[str, ...] = ("all",)
    trials: int = 1_000_000
    ell_max: int = 5
    ensembles: tuple[tuple[int, int], ...] = ((6, 3), (8, 3))
    burn_in: int | None = None
    thinning: int | None = None

    def degrees(self: Self) -> list[tuple[int, int]]:
        """``(n, d)`` pairs of the sweep after the degree rule and parity adjustment.

        Without an explicit rule the degree is ``--d`` when given and ``n/2`` otherwise.
        """
        rule = self.d_rule or (DegreeRule.FIXED if self.d is not None else DegreeRule.HALF)
        return [(n, degree_for(n, rule, self.d)) for n in self.n_list]

    def as_dict(self: Self) -> dict[str, Any]:
        """JSON-ready view for the manifest."""
        result: dict[str, Any] = {}
        for item in fields(self):
            value = getattr(self, item.name)
            if isinstance(value, SupportedCommands | DegreeRule | OutputFormat):
                value = value.value
            elif isinstance(value, Path):
                value = str(value)
            elif isinstance(value, tuple):
                value = [list(entry) if isinstance(entry, tuple) else entry for entry in value]
            result[item.name] = value
        return result


_CONVERTERS: dict[str, Callable[[Any], Any]] = {
    "n_list": parse_int_list,
    "d": _optional_int,
    "d_rule": DegreeRule,
    "shapes": _names,
    "samples": int,
    "seed": int,
    "threads": int,
    "chains": int,
    "out": _optional_path,
    "fmt": OutputFormat,
    "graph_file": _optional_path,
    "exact": _boolean,
    "count": _boolean,
    "lemmas": _names,
    "trials": int,
    "ell_max": int,
    "ensembles": parse_ensembles,
    "burn_in": _optional_int,
    "thinning": _optional_int,
}

_ALIASES = {"format": "fmt", "n-list": "n_list", "d-rule": "d_rule", "ell-max": "ell_max", "shape": "shapes"}


def _canonical_key(key: str) -> str:
    key = key.strip()
    return _ALIASES.get(key, key.replace("-", "_"))


def load_config_file(path: Path) -> dict[str, Any]:
    """Read a JSON object or flat ``key = value`` lines (``#`` starts a comment).

    Args:
        path (Path): Config file.

    Returns
    -------
        dict[str, Any]: Raw values keyed by config field name.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        msg = f"Unable to read config file {path}: {e}"
        raise ConfigError(msg) from e
    if text.lstrip().startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            msg = f"Config file {path} is not valid JSON: {e}"
            raise ConfigError(msg) from e
        return {_canonical_key(key): value for key, value in raw.items()}
    values = {}
    for number, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, value = body.partition("=")
        if not sep:
            msg = f"{path}:{number}: expected key = value, got {line!r}"
            raise ConfigError(msg)
        values[_canonical_key(key)] = value.strip()
    return values


def _environment_values() -> dict[str, Any]:
    from main import env  # noqa: PLC0415

    values = {}
    threads = env.int("REGFACTOR_THREADS", None)
    chains = env.int("REGFACTOR_CHAINS", None)
    if threads is not None:
        values["threads"] = threads
    if chains is not None:
        values["chains"] = chains
    return values


def _validate(config: ExperimentConfig) -> None:
    problems = []
    if config.samples < 1:
        problems.append(f"samples must be positive, got {config.samples}")
    if config.threads < 1:
        problems.append(f"threads must be positive, got {config.threads}")
    if config.chains < 1:
        problems.append(f"chains must be positive, got {config.chains}")
    if not 0 <= config.seed <= MAX_SEED:
        problems.append(f"seed must be an unsigned 64-bit integer, got {config.seed}")
    if any(n < 3 for n in config.n_list):  # noqa: PLR2004
        problems.append(f"every n must be at least 3, got {config.n_list}")
    if config.trials < 1:
        problems.append(f"trials must be positive, got {config.trials}")
    if not 3 <= config.ell_max <= 6:  # noqa: PLR2004
        problems.append(f"ell-max must lie in 3..6, got {config.ell_max}")
    if problems:
        raise ConfigError("; ".join(problems))
    config.degrees()


def build_config(args: Namespace) -> ExperimentConfig:
    """Merge defaults < ``--config`` file < environment < explicit flags and validate.

    Args:
        args (Namespace): Parsed command line; options left at ``None`` were not given.

    Returns
    -------
        ExperimentConfig: The effective configuration.
    """
    values: dict[str, Any] = {}
    config_path = getattr(args, "config", None)
    if config_path is not None:
        values.update(load_config_file(Path(config_path)))
    values.update(_environment_values())
    values.update({key: value for key, value in vars(args).items() if key in _CONVERTERS and value is not None})
    unknown = sorted(set(values) - set(_CONVERTERS))
    if unknown:
        msg = f"Unknown configuration keys: {', '.join(unknown)}"
        raise ConfigError(msg)
    try:
        converted = {key: _CONVERTERS[key](value) for key, value in values.items()}
        config = ExperimentConfig(subcommand=SupportedCommands(args.command), **converted)
    except (TypeError, ValueError) as e:
        msg = f"Invalid configuration value: {e}"
        raise ConfigError(msg) from e
    _validate(config)
    logger.debug(f"Effective configuration: {config.as_dict()}")
    return config
