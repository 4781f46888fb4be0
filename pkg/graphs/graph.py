"""Simple graphs and multigraphs over dense integer labels."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Self

import numpy as np

from graphs.exceptions import GraphError

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping

    from numpy.typing import NDArray

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    """Return the pair in ``(min, max)`` order, rejecting self-loops."""
    if u == v:
        msg = f"Self-loop at vertex {u} is not allowed"
        raise GraphError(msg)
    return (u, v) if u < v else (v, u)


def _check_bounds(n: int, edges: Iterable[Edge]) -> None:
    if n < 0:
        msg = f"Vertex count must be non-negative, got {n}"
        raise GraphError(msg)
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            msg = f"Edge ({u}, {v}) falls outside the label range 0..{n - 1}"
            raise GraphError(msg)


def _components(vertices: Iterable[int], adjacency: Mapping[int, Iterable[int]] | tuple[frozenset[int], ...]) -> list[
    tuple[int, ...]
]:
    seen: set[int] = set()
    found: list[tuple[int, ...]] = []
    for start in vertices:
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        component = []
        while stack:
            vertex = stack.pop()
            component.append(vertex)
            for neighbour in adjacency[vertex]:
                if neighbour not in seen:
                    seen.add(neighbour)
                    stack.append(neighbour)
        found.append(tuple(sorted(component)))
    return found


@dataclass(frozen=True)
class Graph(object):
    """Simple labelled undirected graph on the labels ``0..n-1``.

    Attributes
    ----------
        n (int): Size of the label universe. Labels without edges are isolated vertices.
        edges (frozenset[Edge]): Unordered vertex pairs, each stored once as ``(min, max)``.
    """

    n: int
    edges: frozenset[Edge]

    def __post_init__(self: Self) -> None:
        normalized = frozenset(normalize_edge(u, v) for u, v in self.edges)
        _check_bounds(self.n, normalized)
        object.__setattr__(self, "edges", normalized)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int | None = None) -> Graph:
        """Build a graph from an edge iterable, sizing the label universe from the edges when ``n`` is omitted."""
        edge_list = list(edges)
        if n is None:
            n = 1 + max(max(edge) for edge in edge_list) if edge_list else 0
        return cls(n, frozenset(edge_list))

    @cached_property
    def adjacency(self: Self) -> tuple[frozenset[int], ...]:
        neighbours: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            neighbours[u].add(v)
            neighbours[v].add(u)
        return tuple(frozenset(item) for item in neighbours)

    @property
    def edge_count(self: Self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self: Self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def has_edge(self: Self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def degree(self: Self, vertex: int) -> int:
        return len(self.adjacency[vertex])

    @cached_property
    def degrees(self: Self) -> tuple[int, ...]:
        return tuple(len(item) for item in self.adjacency)

    def is_regular(self: Self, d: int) -> bool:
        """Whether every vertex of the label universe has degree exactly ``d``."""
        return all(degree == d for degree in self.degrees)

    @cached_property
    def non_isolated(self: Self) -> tuple[int, ...]:
        return tuple(vertex for vertex, degree in enumerate(self.degrees) if degree)

    @property
    def vertex_count(self: Self) -> int:
        """Number of non-isolated vertices, ``v(H)`` for a shape."""
        return len(self.non_isolated)

    @property
    def min_degree(self: Self) -> int:
        return min((self.degrees[v] for v in self.non_isolated), default=0)

    def components(self: Self) -> list[tuple[int, ...]]:
        """Vertex sets of the connected components spanned by the edges (isolated vertices excluded)."""
        return _components(self.non_isolated, self.adjacency)

    def is_connected(self: Self) -> bool:
        return len(self.components()) == 1

    def is_cycle(self: Self) -> bool:
        return self.edge_count >= 3 and self.is_connected() and all(self.degrees[v] == 2 for v in self.non_isolated)

    def is_star(self: Self) -> bool:
        """A connected tree with one vertex adjacent to every other vertex (includes a single edge)."""
        if not self.edges or not self.is_connected() or self.edge_count != self.vertex_count - 1:
            return False
        return max(self.degrees) == self.edge_count

    def complement(self: Self) -> Graph:
        """Complement within the full label universe."""
        missing = (
            (u, v) for u in range(self.n) for v in range(u + 1, self.n) if (u, v) not in self.edges
        )
        return Graph(self.n, frozenset(missing))

    def relabel(self: Self, mapping: Mapping[int, int], n: int) -> Graph:
        return Graph(n, frozenset((mapping[u], mapping[v]) for u, v in self.edges))

    def compact(self: Self) -> tuple[Graph, dict[int, int]]:
        """Relabel the non-isolated vertices to ``0..v-1`` in increasing order, dropping isolated vertices."""
        mapping = {vertex: index for index, vertex in enumerate(self.non_isolated)}
        return self.relabel(mapping, len(mapping)), mapping

    def subgraph(self: Self, edges: Iterable[Edge]) -> Graph:
        return Graph(self.n, frozenset(edges))

    def adjacency_matrix(self: Self, dtype: type = np.float64) -> NDArray[np.generic]:
        matrix = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges:
            matrix[u, v] = 1
            matrix[v, u] = 1
        return matrix

    def to_multigraph(self: Self) -> Multigraph:
        return Multigraph.from_counts(self.n, dict.fromkeys(self.edges, 1))

    def __str__(self: Self) -> str:
        body = ",".join(f"{u}-{v}" for u, v in self.sorted_edges)
        return f"Graph(n={self.n}, edges=[{body}])"


@dataclass(frozen=True)
class Multigraph(object):
    """Labelled undirected multigraph without self-loops.

    Attributes
    ----------
        n (int): Size of the label universe.
        multiplicities (tuple[tuple[Edge, int], ...]): Sorted ``((u, v), m)`` pairs with ``m >= 1``.
    """

    n: int
    multiplicities: tuple[tuple[Edge, int], ...]

    def __post_init__(self: Self) -> None:
        merged: Counter[Edge] = Counter()
        for (u, v), count in self.multiplicities:
            if count < 1:
                msg = f"Multiplicity of ({u}, {v}) must be positive, got {count}"
                raise GraphError(msg)
            merged[normalize_edge(u, v)] += count
        _check_bounds(self.n, merged)
        object.__setattr__(self, "multiplicities", tuple(sorted(merged.items())))

    @classmethod
    def from_counts(cls, n: int, counts: Mapping[Edge, int]) -> Multigraph:
        return cls(n, tuple((edge, count) for edge, count in counts.items() if count))

    @cached_property
    def counts(self: Self) -> dict[Edge, int]:
        return dict(self.multiplicities)

    def multiplicity(self: Self, u: int, v: int) -> int:
        return self.counts.get((min(u, v), max(u, v)), 0)

    @cached_property
    def adjacency(self: Self) -> tuple[frozenset[int], ...]:
        return self.underlying().adjacency

    def underlying(self: Self) -> Graph:
        """The simple graph on the pairs with non-zero multiplicity."""
        return Graph(self.n, frozenset(self.counts))

    def singles(self: Self) -> frozenset[Edge]:
        """``E_sing``: the pairs with multiplicity exactly one."""
        return frozenset(edge for edge, count in self.multiplicities if count == 1)

    @property
    def total_multiplicity(self: Self) -> int:
        """``e(G)`` counted with multiplicity."""
        return sum(count for _, count in self.multiplicities)

    @property
    def is_simple(self: Self) -> bool:
        return all(count == 1 for _, count in self.multiplicities)

    @property
    def non_isolated(self: Self) -> tuple[int, ...]:
        return self.underlying().non_isolated

    @property
    def vertex_count(self: Self) -> int:
        return len(self.non_isolated)

    def components(self: Self) -> list[tuple[int, ...]]:
        return self.underlying().components()

    def relabel(self: Self, mapping: Mapping[int, int], n: int) -> Multigraph:
        counts: Counter[Edge] = Counter()
        for (u, v), count in self.multiplicities:
            counts[normalize_edge(mapping[u], mapping[v])] += count
        return Multigraph.from_counts(n, counts)

    def compact(self: Self) -> tuple[Multigraph, dict[int, int]]:
        mapping = {vertex: index for index, vertex in enumerate(self.non_isolated)}
        return self.relabel(mapping, len(mapping)), mapping

    def restrict(self: Self, vertices: Iterable[int]) -> Multigraph:
        """Sub-multigraph on the pairs with both endpoints in ``vertices`` (same label universe)."""
        keep = set(vertices)
        return Multigraph(self.n, tuple(item for item in self.multiplicities if set(item[0]) <= keep))

    def matrix(self: Self) -> list[list[int]]:
        rows = [[0] * self.n for _ in range(self.n)]
        for (u, v), count in self.multiplicities:
            rows[u][v] = count
            rows[v][u] = count
        return rows

    def __add__(self: Self, other: Multigraph) -> Multigraph:
        counts: Counter[Edge] = Counter(self.counts)
        counts.update(other.counts)
        return Multigraph.from_counts(max(self.n, other.n), counts)

    def __str__(self: Self) -> str:
        body = ",".join(f"{u}-{v}x{count}" for (u, v), count in self.multiplicities)
        return f"Multigraph(n={self.n}, edges=[{body}])"
