"""Exact expansion of subgraph counts into graph factors.

Writing ``x_e = p + q*chi_e`` and multiplying out over every copy of ``H`` in ``K_n`` gives
``X_H = sum_S p**(e(H)-e(S)) * q**e(S) * c(S,H) * N(H,S) * C(n-v(S), v(H)-v(S)) * gamma_S`` over isomorphism classes
of subgraphs ``S`` of ``H`` (the empty one included), with ``c(S,H) = (v(H)-v(S))! * aut(S) / aut(H)``.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from typing import TYPE_CHECKING

from loguru import logger

from algebra.exceptions import ExpansionError
from algebra.expr import FactorExpr
from algebra.ring import N, P, RingElem, falling, rational
from graphs.canonical import CanonicalShape, aut_count, canonicalize

if TYPE_CHECKING:
    from graphs.graph import Graph

MAX_EXPANSION_VERTICES = 8


def subgraph_classes(h: Graph) -> Counter[CanonicalShape]:
    """``N(H, S)`` for every isomorphism class ``S`` of not necessarily induced subgraphs of ``h``, by edge subsets."""
    edges = h.sorted_edges
    classes: Counter[CanonicalShape] = Counter()
    for size in range(len(edges) + 1):
        for chosen in combinations(edges, size):
            classes[canonicalize(h.subgraph(chosen))] += 1
    return classes


def expand_subgraph_count(h: Graph) -> FactorExpr:
    """``X_H`` as a factor expression, an identity on every graph with ``chi`` taken at density ``p``.

    Args:
        h (Graph): Connected, non-empty, at most ``MAX_EXPANSION_VERTICES`` vertices.

    Returns
    -------
        FactorExpr: One term per subgraph class, the empty class in the constant.
    """
    if not h.edges or not h.is_connected():
        msg = f"Subgraph-count expansion needs a connected non-empty shape, got {h}"
        raise ExpansionError(msg)
    v_h, e_h = h.vertex_count, h.edge_count
    if v_h > MAX_EXPANSION_VERTICES:
        msg = f"Expansion is limited to {MAX_EXPANSION_VERTICES} vertices, got {v_h}"
        raise ExpansionError(msg)
    aut_h = aut_count(h)
    parts = []
    for shape, copies in sorted(subgraph_classes(h).items()):
        gap = v_h - shape.vertex_count
        # c(S,H) * C(n - v(S), gap) = aut(S)/aut(H) * (n - v(S))_(gap)
        weight = rational(copies * aut_count(shape)) / aut_h * falling(N - shape.vertex_count, gap)
        coefficient = RingElem(weight * P ** (e_h - shape.edge_count)) * RingElem.q() ** shape.edge_count
        parts.append(FactorExpr.scalar(coefficient) if shape.is_empty else FactorExpr.of(shape, coefficient))
    result = FactorExpr.total(parts)
    logger.debug(f"X_H for {h} expands into {len(result.terms)} factor terms")
    return result
