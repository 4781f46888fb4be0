"""Canonical forms and automorphism counts for small graphs and multigraphs.

The canonical labeling maximises the row-major upper triangle of the multiplicity matrix. For a simple graph this is
the lexicographically least sorted edge list over all relabelings. The search individualises one vertex per level and
refines the remaining ordered cells by their multiplicity to it, so every optimal labeling is a leaf of the search tree
and the number of optimal leaves is the order of the automorphism group.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from typing import TYPE_CHECKING, Self

from loguru import logger

from graphs.exceptions import TooLargeError
from graphs.graph import Edge, Graph, Multigraph

if TYPE_CHECKING:
    from collections.abc import Sequence

MAX_CANONICAL_VERTICES = 10

Rows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, order=True)
class CanonicalShape(object):
    """Isomorphism-class key of an isolated-vertex-free (multi)graph.

    Attributes
    ----------
        vertex_count (int): ``v(H)``.
        edges (tuple[Edge, ...]): Sorted canonical pairs on the labels ``0..v-1``.
        multiplicities (tuple[int, ...]): Multiplicity of each pair, all ones for a simple shape.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    multiplicities: tuple[int, ...]

    @property
    def edge_count(self: Self) -> int:
        """Number of distinct pairs."""
        return len(self.edges)

    @property
    def total_multiplicity(self: Self) -> int:
        return sum(self.multiplicities)

    @property
    def is_simple(self: Self) -> bool:
        return all(count == 1 for count in self.multiplicities)

    @property
    def is_empty(self: Self) -> bool:
        return not self.edges

    def graph(self: Self) -> Graph:
        """The underlying simple graph on ``0..v-1``."""
        return Graph(self.vertex_count, frozenset(self.edges))

    def multigraph(self: Self) -> Multigraph:
        return Multigraph(self.vertex_count, tuple(zip(self.edges, self.multiplicities, strict=True)))

    def __str__(self: Self) -> str:
        if self.is_empty:
            return "empty"
        return ",".join(
            f"{u}-{v}" if count == 1 else f"{u}-{v}x{count}"
            for (u, v), count in zip(self.edges, self.multiplicities, strict=True)
        )


EMPTY_SHAPE = CanonicalShape(0, (), ())


def _refine(cells: Sequence[tuple[int, ...]], pivot: int, matrix: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    refined: list[tuple[int, ...]] = []
    for cell in cells:
        groups: dict[int, list[int]] = {}
        for vertex in cell:
            groups.setdefault(matrix[pivot][vertex], []).append(vertex)
        refined.extend(tuple(groups[weight]) for weight in sorted(groups, reverse=True))
    return refined


class _LabelingSearch(object):
    """Depth-first individualisation-refinement search for the maximal multiplicity matrix."""

    def __init__(self: Self, matrix: Sequence[Sequence[int]]) -> None:
        self.matrix = matrix
        self.best: Rows | None = None
        self.best_order: tuple[int, ...] = ()
        self.optimal_leaves = 0

    def run(self: Self) -> None:
        # A single initial cell: any degree-based pre-ordering would constrain the optimum itself.
        self._descend([tuple(range(len(self.matrix)))], [], ())

    def _descend(self: Self, cells: list[tuple[int, ...]], order: list[int], rows: Rows) -> None:
        if not cells:
            self._leaf(order, rows)
            return
        head, rest = cells[0], cells[1:]
        for candidate in head:
            remaining = [vertex for vertex in head if vertex != candidate]
            refined = _refine([tuple(remaining), *rest] if remaining else rest, candidate, self.matrix)
            row = tuple(self.matrix[candidate][vertex] for cell in refined for vertex in cell)
            prefix = (*rows, row)
            if self.best is not None and prefix < self.best[: len(prefix)]:
                continue
            self._descend(refined, [*order, candidate], prefix)

    def _leaf(self: Self, order: list[int], rows: Rows) -> None:
        if self.best is None or rows > self.best:
            self.best = rows
            self.best_order = tuple(order)
            self.optimal_leaves = 1
        elif rows == self.best:
            self.optimal_leaves += 1


@cache
def _search(matrix: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], int]:
    search = _LabelingSearch(matrix)
    search.run()
    return search.best_order, search.optimal_leaves


def _compact(g: Graph | Multigraph) -> Multigraph:
    multigraph = g.to_multigraph() if isinstance(g, Graph) else g
    compacted, _ = multigraph.compact()
    if compacted.n > MAX_CANONICAL_VERTICES:
        msg = (
            f"Canonical forms are limited to {MAX_CANONICAL_VERTICES} non-isolated vertices, "
            f"got {compacted.n}"
        )
        raise TooLargeError(msg)
    return compacted


def canonical_labeling(g: Graph | Multigraph) -> tuple[CanonicalShape, dict[int, int]]:
    """Canonical shape of ``g`` together with the map from ``g``'s labels to canonical labels.

    Args:
        g (Graph | Multigraph): Input, isolated vertices are ignored.

    Returns
    -------
        tuple[CanonicalShape, dict[int, int]]: The shape and the relabeling of every non-isolated vertex.
    """
    compacted = _compact(g)
    if compacted.n == 0:
        return EMPTY_SHAPE, {}
    matrix = tuple(tuple(row) for row in compacted.matrix())
    order, _ = _search(matrix)
    position = {vertex: index for index, vertex in enumerate(order)}
    pairs = sorted(
        ((min(position[u], position[v]), max(position[u], position[v])), count)
        for (u, v), count in compacted.multiplicities
    )
    shape = CanonicalShape(compacted.n, tuple(edge for edge, _ in pairs), tuple(count for _, count in pairs))
    original = g.non_isolated
    return shape, {original[vertex]: position[vertex] for vertex in range(compacted.n)}


def canonicalize(g: Graph | Multigraph) -> CanonicalShape:
    """Isomorphism-invariant key of ``g``; raises ``TooLargeError`` beyond ``MAX_CANONICAL_VERTICES``."""
    shape, _ = canonical_labeling(g)
    return shape


@cache
def _aut_of_shape(shape: CanonicalShape) -> int:
    matrix = tuple(tuple(row) for row in shape.multigraph().matrix())
    _, leaves = _search(matrix)
    logger.debug(f"aut({shape}) = {leaves}")
    return leaves


def aut_count(g: Graph | Multigraph | CanonicalShape) -> int:
    """Number of vertex permutations of ``g`` that preserve every edge multiplicity."""
    shape = g if isinstance(g, CanonicalShape) else canonicalize(g)
    if shape.is_empty:
        return 1
    return _aut_of_shape(shape)
