"""Running one configured experiment: chain farming, dispatch, reports and exit statuses."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, TypeVar

from loguru import logger

from algebra.exceptions import ExpansionError, PoleAtEvaluationError
from cli.exceptions import ConfigError, IoFailureError, NumericFailureError
from cli.report import emit_report, write_manifest, write_text
from cli.strings import (
    chains_clamped,
    config_invalid,
    numeric_failure,
    run_finished,
    run_started,
    unexpected_failure,
    verification_failed,
)
from ensemble.exceptions import EnsembleError
from ensemble.sampler import RegularGraphSampler
from ensemble.spec import EnsembleSpec, chain_spec
from factors.exceptions import DegenerateDensityError, ShapeTooLargeForEnsembleError, ShapeUnsupportedError
from graphs.exceptions import GraphError
from proofcheck.exceptions import DomainViolationError
from stats.exceptions import InsufficientDataError, StarShapeError

if TYPE_CHECKING:
    from collections.abc import Callable

    from cli.config import ExperimentConfig
    from graphs.graph import Graph


T = TypeVar("T")

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_INVALID = 2
EXIT_NUMERIC = 3

VALIDATION_ERRORS = (
    ConfigError,
    GraphError,
    EnsembleError,
    DegenerateDensityError,
    ShapeUnsupportedError,
    ShapeTooLargeForEnsembleError,
    StarShapeError,
    DomainViolationError,
    ExpansionError,
)
NUMERIC_ERRORS = (NumericFailureError, PoleAtEvaluationError, InsufficientDataError)


@dataclass
class CommandOutput(object):
    """What a sub-command hands back to the runner.

    Either ``text`` (graph records, reduced expressions) or ``rows`` in ``columns`` order; ``failures`` counts failed
    verifications and turns into exit status 3.
    """

    columns: tuple[str, ...] = ()
    rows: list[dict[str, Any]] = field(default_factory=list)
    text: str | None = None
    failures: int = 0
    extras: dict[str, Any] = field(default_factory=dict)


def chain_sizes(samples: int, chains: int) -> list[int]:
    """Samples per chain: equal shares, the first ``samples % chains`` chains taking one more."""
    share, extra = divmod(samples, chains)
    return [share + (1 if index < extra else 0) for index in range(chains) if share or index < extra]


def _run_chain(spec: EnsembleSpec, count: int, measure: Callable[[Graph], T]) -> list[T]:
    return [measure(g) for g in RegularGraphSampler(spec).samples(count)]


def farm_samples(
    base: EnsembleSpec,
    samples: int,
    chains: int,
    threads: int,
    measure: Callable[[Graph], T],
) -> list[T]:
    """Measure ``samples`` graphs drawn by ``chains`` independent chains, concatenated in chain order.

    Args:
        base (EnsembleSpec): Ensemble and seed; each chain uses ``chain_spec(base, index)``.
        samples (int): Total number of graphs.
        chains (int): Number of chains; the result does not depend on ``threads``.
        threads (int): Worker processes; ``1`` runs inline.
        measure (Callable[[Graph], T]): Picklable function applied to every sampled graph.

    Returns
    -------
        list[T]: One measurement per sampled graph.
    """
    sizes = chain_sizes(samples, chains)
    if len(sizes) < chains:
        logger.warning(chains_clamped.format(samples=samples, chains=chains))
    specs = [chain_spec(base, index) for index in range(len(sizes))]
    if threads == 1:
        batches = [_run_chain(spec, size, measure) for spec, size in zip(specs, sizes, strict=True)]
    else:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            batches = list(executor.map(_run_chain, specs, sizes, [measure] * len(sizes)))
    return [vector for batch in batches for vector in batch]


def ensemble_spec(config: ExperimentConfig, n: int, d: int) -> EnsembleSpec:
    return EnsembleSpec(n, d, seed=config.seed, burn_in_swaps=config.burn_in, thinning_swaps=config.thinning)


def _handlers() -> dict[str, Callable[[ExperimentConfig], CommandOutput]]:
    from cli.commands.clt_report import handle_clt_report_command  # noqa: PLC0415
    from cli.commands.enumerate import handle_enumerate_command  # noqa: PLC0415
    from cli.commands.factors import handle_factors_command  # noqa: PLC0415
    from cli.commands.proofcheck import handle_proofcheck_command  # noqa: PLC0415
    from cli.commands.reduce import handle_reduce_command  # noqa: PLC0415
    from cli.commands.sample import handle_sample_command  # noqa: PLC0415
    from cli.commands.trace_stats import handle_trace_stats_command  # noqa: PLC0415
    from cli.commands.variance_report import handle_variance_report_command  # noqa: PLC0415
    from cli.commands.verify_identities import handle_verify_identities_command  # noqa: PLC0415

    return {
        "enumerate": handle_enumerate_command,
        "sample": handle_sample_command,
        "factors": handle_factors_command,
        "reduce": handle_reduce_command,
        "variance-report": handle_variance_report_command,
        "trace-stats": handle_trace_stats_command,
        "clt-report": handle_clt_report_command,
        "proofcheck": handle_proofcheck_command,
        "verify-identities": handle_verify_identities_command,
    }


def _emit(config: ExperimentConfig, output: CommandOutput) -> None:
    if output.text is not None:
        write_text(output.text, config.out)
    else:
        emit_report(output.rows, output.columns, config.fmt, config.out)


def run_experiment(config: ExperimentConfig) -> int:
    """Run the configured sub-command, write its outputs and map the outcome to an exit status.

    Args:
        config (ExperimentConfig): Validated configuration.

    Returns
    -------
        int: 0 on success, 2 on a validation error, 3 on a numeric failure or failed verification, 1 otherwise.
    """
    command = config.subcommand.value
    logger.info(run_started.format(command=command, seed=config.seed, chains=config.chains, threads=config.threads))
    started = time.perf_counter()
    try:
        output = _handlers()[command](config)
        _emit(config, output)
        seconds = time.perf_counter() - started
        if config.out is not None:
            write_manifest(config.out, config.as_dict(), seconds, output.extras)
    except VALIDATION_ERRORS as e:
        logger.error(config_invalid.format(error=e))
        return EXIT_INVALID
    except NUMERIC_ERRORS as e:
        logger.error(numeric_failure.format(error=e))
        return EXIT_NUMERIC
    except IoFailureError as e:
        logger.error(f"{e}")
        return EXIT_UNEXPECTED
    except Exception as e:
        logger.exception(f"{unexpected_failure.format(command=command)}: {e}")
        return EXIT_UNEXPECTED
    logger.info(run_finished.format(command=command, seconds=seconds))
    if output.failures:
        logger.error(verification_failed.format(failures=output.failures))
        return EXIT_NUMERIC
    return EXIT_OK
