"""Exhaustive enumeration of labelled d-regular graphs, the oracle for every exact expectation."""

from __future__ import annotations

import math
from itertools import combinations
from typing import TYPE_CHECKING

from loguru import logger

from ensemble.exceptions import EnumerationTooLargeError, InfeasibleError
from graphs.graph import Edge, Graph
from ensemble.counting import mw_count_estimate

if TYPE_CHECKING:
    from collections.abc import Iterator

MAX_ENUMERATION_VERTICES = 10
MAX_ESTIMATED_COUNT = 10**8


def _check_enumerable(n: int, d: int) -> None:
    if n < 1 or not 0 <= d <= n - 1:
        msg = f"d must lie in 0..{n - 1} for n={n}, got {d}"
        raise InfeasibleError(msg)
    if (n * d) % 2:
        msg = f"No {d}-regular graph on {n} vertices exists: d*n is odd"
        raise InfeasibleError(msg)
    if n > MAX_ENUMERATION_VERTICES:
        msg = f"Enumeration is limited to {MAX_ENUMERATION_VERTICES} vertices, got n={n}"
        raise EnumerationTooLargeError(msg)
    if 1 <= d <= n - 2:
        estimate = mw_count_estimate(n, d)
        if estimate >= math.log(MAX_ESTIMATED_COUNT):
            msg = f"G({n},{d}) holds about {math.exp(estimate):.3g} graphs, above the {MAX_ESTIMATED_COUNT:.0e} guard"
            raise EnumerationTooLargeError(msg)


def enumerate_regular(n: int, d: int) -> Iterator[Graph]:
    """Yield every labelled d-regular simple graph on ``0..n-1`` exactly once.

    Vertices are completed in increasing order: vertex ``v`` picks its missing neighbours among the later vertices
    that still need edges, in lexicographic order of the chosen sets. A branch is cut as soon as some later vertex
    needs more edges than there are other open vertices left to supply them.

    Args:
        n (int): Vertex count, at most ``MAX_ENUMERATION_VERTICES``.
        d (int): Degree.

    Returns
    -------
        Iterator[Graph]: The graphs in a deterministic order.
    """
    _check_enumerable(n, d)
    need = [d] * n
    edges: list[Edge] = []
    logger.debug(f"Enumerating G({n},{d})")

    def feasible(after: int) -> bool:
        pending = [need[w] for w in range(after + 1, n) if need[w]]
        return sum(pending) % 2 == 0 and all(item <= len(pending) - 1 for item in pending)

    def complete(v: int) -> Iterator[Graph]:
        if v == n:
            yield Graph(n, frozenset(edges))
            return
        if need[v] == 0:
            yield from complete(v + 1)
            return
        open_later = [w for w in range(v + 1, n) if need[w] > 0]
        for chosen in combinations(open_later, need[v]):
            missing = need[v]
            need[v] = 0
            for w in chosen:
                need[w] -= 1
                edges.append((v, w))
            if feasible(v):
                yield from complete(v + 1)
            for w in chosen:
                need[w] += 1
                edges.pop()
            need[v] = missing

    yield from complete(0)


def exact_count(n: int, d: int) -> int:
    """``|G(n, d)|`` by enumeration."""
    total = sum(1 for _ in enumerate_regular(n, d))
    logger.debug(f"|G({n},{d})| = {total}")
    return total
