"""Injective embedding and unlabelled subgraph counts."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from graphs.canonical import aut_count

if TYPE_CHECKING:
    from graphs.graph import Graph


def _search_order(pattern: Graph) -> list[int]:
    """Pattern vertices ordered so that each vertex after the first of its component has a placed neighbour."""
    order: list[int] = []
    placed: set[int] = set()
    remaining = set(pattern.non_isolated)
    while remaining:
        start = max(remaining, key=lambda vertex: (pattern.degree(vertex), -vertex))
        frontier = [start]
        placed.add(start)
        while frontier:
            vertex = frontier.pop(0)
            order.append(vertex)
            remaining.discard(vertex)
            neighbours = sorted(pattern.adjacency[vertex] - placed, key=lambda item: (-pattern.degree(item), item))
            placed.update(neighbours)
            frontier.extend(neighbours)
    return order


def count_embeddings(host: Graph, pattern: Graph) -> int:
    """Number of injective maps of ``pattern``'s non-isolated vertices into ``host`` that carry edges to edges.

    Args:
        host (Graph): The graph searched in.
        pattern (Graph): The graph being embedded; isolated labels are ignored.

    Returns
    -------
        int: The injective homomorphism count, ``aut(pattern)`` times the number of copies.
    """
    order = _search_order(pattern)
    if not order:
        return 1
    if len(order) > host.vertex_count:
        return 0
    index = {vertex: position for position, vertex in enumerate(order)}
    back_neighbours = [
        [index[neighbour] for neighbour in pattern.adjacency[vertex] if index[neighbour] < position]
        for position, vertex in enumerate(order)
    ]
    required_degree = [pattern.degree(vertex) for vertex in order]
    image: list[int] = [-1] * len(order)
    used: set[int] = set()

    def extend(position: int) -> int:
        if position == len(order):
            return 1
        anchors = back_neighbours[position]
        candidates = host.adjacency[image[anchors[0]]] if anchors else range(host.n)
        total = 0
        for candidate in candidates:
            if candidate in used or host.degree(candidate) < required_degree[position]:
                continue
            if any(not host.has_edge(candidate, image[anchor]) for anchor in anchors[1:]):
                continue
            image[position] = candidate
            used.add(candidate)
            total += extend(position + 1)
            used.discard(candidate)
        return total

    return extend(0)


def count_subgraphs(host: Graph, pattern: Graph) -> int:
    """``N(host, pattern)``: distinct, not necessarily induced, subgraphs of ``host`` isomorphic to ``pattern``."""
    embeddings = count_embeddings(host, pattern)
    copies, remainder = divmod(embeddings, aut_count(pattern))
    # Embeddings come in whole automorphism orbits
    assert remainder == 0, f"embedding count {embeddings} is not a multiple of aut"  # noqa: S101
    return copies


def count_short_cycles(host: Graph, length: int) -> int:
    """Triangles or 4-cycles of ``host`` from traces of the integer adjacency matrix.

    ``tr(A**3) = 6 N(C3)`` and ``tr(A**4) = 8 N(C4) + 2 sum(deg**2) - 2 e``.
    """
    adjacency = host.adjacency_matrix(dtype=np.int64)
    trace = int(np.trace(np.linalg.matrix_power(adjacency, length)))
    if length == 3:  # noqa: PLR2004
        return trace // 6
    if length == 4:  # noqa: PLR2004
        return (trace - 2 * sum(degree * degree for degree in host.degrees) + 2 * host.edge_count) // 8
    msg = f"Trace counting covers cycles of length 3 and 4, got {length}"
    raise ValueError(msg)


def count_shape(host: Graph, pattern: Graph) -> int:
    """``N(host, pattern)``, through traces for triangles and 4-cycles and by embedding search otherwise."""
    if pattern.is_cycle() and pattern.edge_count in (3, 4):
        return count_short_cycles(host, pattern.edge_count)
    return count_subgraphs(host, pattern)
