"""Closed-walk types and the trace identity tr(X^l) = sum_G c_G * gamma_G.

Closed walks of length ``l`` in ``K_n`` without self-loops are grouped by the multigraph their steps trace out.
Each walk is represented once by its restricted-growth relabeling (first visits get ``0, 1, 2, ...``); a pattern on
``k`` vertices stands for ``n(n-1)...(n-k+1)`` labelled walks. With ``P_G`` patterns tracing shape ``G``,
each embedded copy of ``G`` carries ``c_G = P_G * aut(G)`` walks.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cache
from typing import TYPE_CHECKING, Self

import numpy as np
from loguru import logger

from factors.exceptions import UnsupportedWalkLengthError
from graphs.canonical import CanonicalShape, aut_count, canonicalize
from graphs.graph import Edge, Multigraph

if TYPE_CHECKING:
    from collections.abc import Iterator

    from factors.evaluator import FactorEvaluator, FactorNumber
    from factors.field import EdgeField
    from graphs.graph import Graph

MIN_WALK_LENGTH = 3
MAX_WALK_LENGTH = 6


class WalkTag(Enum):
    """Partition of the walk types used by the trace expansion."""

    TREE = "tree"  # doubled tree: deterministic contribution
    CYCLE = "cycle"  # single or doubled cycle with pendant doubled trees
    GENERAL = "general"

    def __str__(self: Self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class WalkType(object):
    shape: CanonicalShape
    coefficient: int
    tag: WalkTag


@dataclass(frozen=True)
class WalkTypeTable(object):
    """Every closed-walk shape of one length with its per-copy walk count.

    Attributes
    ----------
        length (int): Walk length.
        entries (tuple[WalkType, ...]): Sorted by shape.
    """

    length: int
    entries: tuple[WalkType, ...]

    def coefficient(self: Self, shape: CanonicalShape) -> int:
        return next((entry.coefficient for entry in self.entries if entry.shape == shape), 0)

    def by_tag(self: Self, tag: WalkTag) -> list[WalkType]:
        return [entry for entry in self.entries if entry.tag is tag]

    def walk_total(self: Self, n: int) -> int:
        """Closed walks of this length without self-loops in ``K_n``, counted through the table."""
        total = 0
        for entry in self.entries:
            k = entry.shape.vertex_count
            falling = 1
            for i in range(k):
                falling *= n - i
            total += entry.coefficient * falling // aut_count(entry.shape)
        return total


def _restricted_growth_walks(length: int) -> Iterator[tuple[int, ...]]:
    walk = [0]

    def extend(top: int) -> Iterator[tuple[int, ...]]:
        if len(walk) == length:
            if walk[-1] != walk[0]:
                yield tuple(walk)
            return
        for vertex in range(top + 2):
            if vertex == walk[-1]:
                continue
            walk.append(vertex)
            yield from extend(max(top, vertex))
            walk.pop()

    yield from extend(0)


def _traced(walk: tuple[int, ...]) -> Multigraph:
    steps: Counter[Edge] = Counter()
    for position, u in enumerate(walk):
        v = walk[(position + 1) % len(walk)]
        steps[(min(u, v), max(u, v))] += 1
    return Multigraph.from_counts(max(walk) + 1, steps)


def classify_walk_shape(shape: CanonicalShape) -> WalkTag:
    """Doubled trees, cycles carrying pendant doubled trees, and everything else."""
    multigraph = shape.multigraph()
    simple = multigraph.underlying()
    doubled = all(count == 2 for count in shape.multiplicities)  # noqa: PLR2004
    if doubled and simple.edge_count == shape.vertex_count - 1:
        return WalkTag.TREE
    if simple.edge_count != shape.vertex_count:
        return WalkTag.GENERAL
    # Unicyclic: strip leaves to find the cycle
    degree = list(simple.degrees)
    alive = set(range(shape.vertex_count))
    leaves = [vertex for vertex in alive if degree[vertex] == 1]
    while leaves:
        leaf = leaves.pop()
        alive.discard(leaf)
        for neighbour in simple.adjacency[leaf]:
            if neighbour in alive:
                degree[neighbour] -= 1
                if degree[neighbour] == 1:
                    leaves.append(neighbour)
    cycle_counts = {count for (u, v), count in multigraph.multiplicities if u in alive and v in alive}
    tree_counts = {count for (u, v), count in multigraph.multiplicities if not (u in alive and v in alive)}
    if cycle_counts in ({1}, {2}) and tree_counts <= {2}:
        return WalkTag.CYCLE
    return WalkTag.GENERAL


@cache
def walk_types(length: int) -> WalkTypeTable:
    """Table of closed-walk shapes of ``length`` (3 to 6) with their per-copy walk counts.

    Args:
        length (int): Walk length.

    Returns
    -------
        WalkTypeTable: The simple cycle carries coefficient ``2 * length``.
    """
    if not MIN_WALK_LENGTH <= length <= MAX_WALK_LENGTH:
        msg = f"Walk types are tabulated for lengths {MIN_WALK_LENGTH}..{MAX_WALK_LENGTH}, got {length}"
        raise UnsupportedWalkLengthError(msg)
    walks = _restricted_growth_walks(length)
    patterns: Counter[CanonicalShape] = Counter(canonicalize(_traced(walk)) for walk in walks)
    entries = tuple(
        WalkType(shape, count * aut_count(shape), classify_walk_shape(shape))
        for shape, count in sorted(patterns.items())
    )
    logger.debug(f"Closed {length}-walks fall into {len(entries)} shapes")
    return WalkTypeTable(length, entries)


def trace_stat(field: EdgeField, length: int) -> float:
    """``tr(M**l) / (p(1-p))**(l/2)`` with ``M = A - pJ + pI``, that is the trace of the l-th power of chi."""
    if length < 1:
        msg = f"Trace length must be positive, got {length}"
        raise UnsupportedWalkLengthError(msg)
    return float(np.trace(np.linalg.matrix_power(field.chi, length)))


def walk_reconstruction(evaluator: FactorEvaluator, length: int) -> FactorNumber:
    """``sum_G c_G * gamma_G`` over the walk types of ``length``."""
    table = walk_types(length)
    total = evaluator.one() * 0
    for entry in table.entries:
        total = total + entry.coefficient * evaluator.gamma_raw(entry.shape)
    return total


def cycle_gamma_via_trace(evaluator: FactorEvaluator, length: int) -> float:
    """``gamma_{C_l}`` from the trace, with every degenerate walk shape subtracted."""
    table = walk_types(length)
    cycle = canonicalize(_traced(tuple(range(length))))
    remainder = trace_stat(evaluator.field, length)
    for entry in table.entries:
        if entry.shape != cycle:
            remainder -= entry.coefficient * float(evaluator.gamma_raw(entry.shape))
    return remainder / (2 * length)


def adjacency_traces(g: Graph, max_length: int = 5) -> tuple[int, ...]:
    """``tr(A**l)`` for ``l = 3..max_length``: closed-walk counts of the plain adjacency matrix."""
    if not MIN_WALK_LENGTH <= max_length <= MAX_WALK_LENGTH:
        msg = f"Trace lengths run from {MIN_WALK_LENGTH} to at most {MAX_WALK_LENGTH}, got {max_length}"
        raise UnsupportedWalkLengthError(msg)
    adjacency = g.adjacency_matrix()
    power = adjacency @ adjacency
    traces = []
    for _ in range(MIN_WALK_LENGTH, max_length + 1):
        power = power @ adjacency
        # Walk counts stay below 2**53 for the supported sizes, so BLAS products are exact
        traces.append(round(float(np.trace(power))))
    return tuple(traces)
