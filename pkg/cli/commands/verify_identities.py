"""Handle the verify-identities command."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Any

from loguru import logger

from algebra.evaluate import evaluate
from algebra.expansion import expand_subgraph_count
from algebra.expr import FactorExpr
from algebra.reduction import reduce_full
from cli.runner import CommandOutput
from cli.utils import SupportedCommands, add_common_options
from ensemble.enumerate import enumerate_regular
from factors.evaluator import FactorEvaluator
from factors.field import EdgeField
from factors.walks import MAX_WALK_LENGTH, MIN_WALK_LENGTH, trace_stat, walk_reconstruction
from graphs.counting import count_shape, count_subgraphs
from graphs.shapes import cycle, path, star
from ensemble.counting import mw_count_estimate
from stats.moments import MomentAccumulator

if TYPE_CHECKING:
    from argparse import _SubParsersAction
    from collections.abc import Callable

    from cli.config import ExperimentConfig
    from graphs.graph import Graph

COLUMNS = ("ensemble", "identity", "checked", "failures", "passed")

# Graphs per ensemble that go through the exact factor evaluations, in enumeration order.
FACTOR_CHECK_LIMIT = 200
TRACE_TOLERANCE = 1e-9
MW_RATIO_BAND = (0.7, 1.3)


def add_verify_identities_parser(subparsers: _SubParsersAction) -> None:
    """Add the verify-identities sub-command."""
    parser = subparsers.add_parser(
        SupportedCommands.VERIFY_IDENTITIES.value,
        help="deterministic identities over fully enumerated ensembles",
    )
    add_common_options(parser)
    parser.add_argument("--ensembles", help="comma list of n:d pairs, e.g. 6:3,8:3")


def _count_failures(graphs: list[Graph], check: Callable[[Graph], bool]) -> int:
    return sum(not check(g) for g in graphs)


def star_identity(graphs: list[Graph], n: int, d: int, leaves: int) -> int:
    """Graphs whose star count differs from ``n * C(d, s)``."""
    expected = n * math.comb(d, leaves)
    return _count_failures(graphs, lambda g: count_subgraphs(g, star(leaves)) == expected)


def path_triangle_identity(graphs: list[Graph]) -> tuple[int, MomentAccumulator]:
    """Graphs off the common value of ``X_P4 + 3 X_C3``, and the exact moments of ``(X_P4, X_C3)``."""
    pairs = [(count_subgraphs(g, path(4)), count_shape(g, cycle(3))) for g in graphs]
    combined = [p4 + 3 * c3 for p4, c3 in pairs]
    failures = sum(value != combined[0] for value in combined)
    return failures, MomentAccumulator(2, degree=2).extend(pairs)


def reduction_identity(graphs: list[Graph], d: int, shape: Graph) -> int:
    """Graphs on which the reduced form of ``gamma_shape`` differs from ``gamma_shape`` in exact arithmetic."""
    reduced = reduce_full(FactorExpr.of(shape))

    def check(g: Graph) -> bool:
        evaluator = FactorEvaluator(EdgeField(g, d), exact=True)
        return evaluate(reduced, g, d=d, evaluator=evaluator) == evaluator.gamma_raw(shape)

    return _count_failures(graphs, check)


def trace_identity(graphs: list[Graph], d: int, length: int) -> int:
    """Graphs on which ``tr(chi**l)`` and its walk-type reconstruction differ beyond the relative tolerance."""

    def check(g: Graph) -> bool:
        evaluator = FactorEvaluator(EdgeField(g, d))
        trace = trace_stat(evaluator.field, length)
        rebuilt = float(walk_reconstruction(evaluator, length))
        return abs(trace - rebuilt) <= TRACE_TOLERANCE * max(1.0, abs(trace))

    return _count_failures(graphs, check)


def triangle_expansion_identity(graphs: list[Graph], d: int) -> int:
    """Graphs on which the factor expansion of ``X_C3`` differs from the triangle count."""
    expansion = expand_subgraph_count(cycle(3))
    return _count_failures(graphs, lambda g: evaluate(expansion, g, d=d, exact=True) == count_shape(g, cycle(3)))


def _row(ensemble: str, identity: str, checked: int, failures: int) -> dict[str, Any]:
    if failures:
        logger.error(f"G({ensemble}): {identity} fails on {failures} of {checked}")
    return {
        "ensemble": ensemble,
        "identity": identity,
        "checked": checked,
        "failures": failures,
        "passed": not failures,
    }


def verify_ensemble(n: int, d: int) -> list[dict[str, Any]]:
    """Every identity over the full enumeration of ``G(n, d)``."""
    name = f"{n}:{d}"
    graphs = list(enumerate_regular(n, d))
    logger.info(f"Checking identities over {len(graphs)} graphs of G({n},{d})")
    rows = [
        _row(name, f"star-{leaves}-count", len(graphs), star_identity(graphs, n, d, leaves))
        for leaves in (2, 3)
        if leaves <= d
    ]
    failures, acc = path_triangle_identity(graphs)
    rows.append(_row(name, "p4-plus-3-c3-constant", len(graphs), failures))
    if len(graphs) > 1:
        covariance = acc.exact_covariance()
        rows.append(_row(name, "p4-variance-nine-c3", 1, int(covariance[0][0] != 9 * covariance[1][1])))
    subset = graphs[:FACTOR_CHECK_LIMIT]
    if len(subset) < len(graphs):
        logger.debug(f"Factor identities use the first {len(subset)} graphs of G({n},{d})")
    for shape, label in ((path(3), "p3"), (path(4), "p4")):
        rows.append(_row(name, f"{label}-reduction", len(subset), reduction_identity(subset, d, shape)))
    for length in range(MIN_WALK_LENGTH, MAX_WALK_LENGTH + 1):
        rows.append(_row(name, f"trace-{length}-walk-types", len(subset), trace_identity(subset, d, length)))
    rows.append(_row(name, "c3-count-expansion", len(subset), triangle_expansion_identity(subset, d)))
    ratio = math.exp(mw_count_estimate(n, d)) / len(graphs)
    logger.info(f"G({n},{d}): count estimate over exact count = {ratio:.4f}")
    rows.append(_row(name, "count-estimate-band", 1, int(not MW_RATIO_BAND[0] <= ratio <= MW_RATIO_BAND[1])))
    return rows


def handle_verify_identities_command(config: ExperimentConfig) -> CommandOutput:
    """One row per (ensemble, identity); any failed identity makes the run exit with status 3."""
    rows: list[dict[str, Any]] = []
    for n, d in config.ensembles:
        rows.extend(verify_ensemble(n, d))
    failures = sum(not row["passed"] for row in rows)
    return CommandOutput(COLUMNS, rows, failures=failures)
