"""Rewriting graph factors into the basis of connected shapes of minimum degree two.

All rewrites go through labelled sums: for a pattern ``S`` whose non-isolated part has ``v`` vertices, placed on
``k`` labelled vertices, ``L = (n-v)(n-v-1)...(n-k+1) * aut(S) * gamma_S``. Three identities are used:

* powers: ``chi**m = alpha_m + beta_m * chi`` from ``chi**2 = 1 - c*chi`` with ``c = (2p-1)/q``, valid on every graph;
* disconnected shapes: ``L(A) * L(B)`` is the sum of ``L`` over all ways of gluing ``A`` and ``B`` along a partial
  injection of their vertex sets, valid on every graph;
* leaves: on d-regular graphs every chi row sums to zero, so a leaf ``v`` on ``u`` can be moved onto every other
  vertex ``x`` of the pattern with a sign, ``L(S) = -sum_x L(S - v + ux)``.
"""

from __future__ import annotations

from collections import Counter
from functools import cache
from itertools import combinations, permutations
from typing import TYPE_CHECKING

from loguru import logger

from algebra.expr import FactorExpr, is_basis_shape, monomial
from algebra.ring import N, RingElem, falling
from factors.walks import walk_types
from graphs.canonical import CanonicalShape, aut_count, canonicalize
from graphs.graph import Edge, Graph, Multigraph

if TYPE_CHECKING:
    from collections.abc import Iterator

MAX_MULTIPLICITY = 6


@cache
def power_coefficients(m: int) -> tuple[RingElem, RingElem]:
    """``(alpha_m, beta_m)`` with ``chi**m = alpha_m + beta_m * chi``."""
    alpha, beta = RingElem(0), RingElem(1)
    c = RingElem.c()
    for _ in range(m - 1):
        alpha, beta = beta, alpha - c * beta
    return alpha, beta


def labelled_term(pattern: Multigraph | Graph, placed: int) -> FactorExpr:
    """``L(pattern)`` over ``placed`` labelled vertices as a factor expression."""
    shape = canonicalize(pattern)
    factor = falling(N - shape.vertex_count, placed - shape.vertex_count) * aut_count(shape)
    if shape.is_empty:
        return FactorExpr.scalar(RingElem(factor))
    return FactorExpr.of(shape, RingElem(factor))


def power_reduce(shape: Multigraph | CanonicalShape) -> FactorExpr:
    """Expand ``gamma`` of a multigraph shape into simple shapes using ``chi**m = alpha_m + beta_m * chi``.

    Args:
        shape (Multigraph | CanonicalShape): Pairs with multiplicities at most ``MAX_MULTIPLICITY``.

    Returns
    -------
        FactorExpr: Identity valid on every graph.
    """
    key = shape if isinstance(shape, CanonicalShape) else canonicalize(shape)
    if key.is_simple:
        return FactorExpr.of(key)
    if max(key.multiplicities) > MAX_MULTIPLICITY:
        msg = f"Multiplicities above {MAX_MULTIPLICITY} are not expanded: {key}"
        raise ValueError(msg)
    return _power_reduce(key)


@cache
def _power_reduce(key: CanonicalShape) -> FactorExpr:
    pairs = list(zip(key.edges, key.multiplicities, strict=True))
    parts: list[FactorExpr] = []
    for size in range(len(pairs) + 1):
        for chosen in combinations(range(len(pairs)), size):
            included = set(chosen)
            weight = RingElem(1)
            for index, (_, count) in enumerate(pairs):
                alpha, beta = power_coefficients(count)
                weight = weight * (beta if index in included else alpha)
                if not weight:
                    break
            if not weight:
                continue
            kept = Graph(key.vertex_count, frozenset(pairs[index][0] for index in chosen))
            parts.append(labelled_term(kept, key.vertex_count).scale(weight))
    result = FactorExpr.total(parts).scale(RingElem(1) / aut_count(key))
    logger.debug(f"power_reduce({key}) -> {len(result.terms)} terms")
    return result


def _partial_injections(left: int, right: int) -> Iterator[dict[int, int]]:
    for size in range(1, min(left, right) + 1):
        for sources in combinations(range(left), size):
            for targets in permutations(range(right), size):
                yield dict(zip(sources, targets, strict=True))


def _glue(a: Multigraph, b: Multigraph, gluing: dict[int, int]) -> Multigraph:
    """Disjoint union of ``a`` and ``b`` with ``a``'s vertex ``x`` identified with ``b``'s vertex ``gluing[x]``."""
    shift = b.n
    label = {x: gluing.get(x, shift + x) for x in range(a.n)}
    counts: Counter[Edge] = Counter(b.counts)
    for (u, v), count in a.multiplicities:
        x, y = label[u], label[v]
        counts[(min(x, y), max(x, y))] += count
    return Multigraph.from_counts(shift + a.n, counts).compact()[0]


@cache
def disconnected_step(key: CanonicalShape) -> FactorExpr:
    """One rewrite of a disconnected shape: ``gamma_S`` through ``gamma_A * gamma_B`` minus glued overlays."""
    multigraph = key.multigraph()
    components = multigraph.components()
    first = multigraph.restrict(components[0]).compact()[0]
    rest = multigraph.restrict([vertex for component in components[1:] for vertex in component]).compact()[0]
    a_shape, b_shape = canonicalize(first), canonicalize(rest)
    product = FactorExpr({monomial(a_shape, b_shape): RingElem(aut_count(a_shape) * aut_count(b_shape))})
    glued: Counter[CanonicalShape] = Counter(
        canonicalize(_glue(first, rest, gluing)) for gluing in _partial_injections(first.n, rest.n)
    )
    corrections = FactorExpr.total(
        FactorExpr.of(shape, RingElem(count * aut_count(shape))) for shape, count in glued.items()
    )
    return (product - corrections).scale(RingElem(1) / aut_count(key))


@cache
def degree_one_step(key: CanonicalShape) -> FactorExpr:
    """One rewrite of a simple shape with a leaf, valid on d-regular graphs."""
    g = key.graph()
    leaf = next(vertex for vertex in g.non_isolated if g.degree(vertex) == 1)
    (anchor,) = g.adjacency[leaf]
    others = [vertex for vertex in g.non_isolated if vertex not in (leaf, anchor)]
    base: Counter[Edge] = Counter({edge: 1 for edge in g.edges if leaf not in edge})
    moved: Counter[CanonicalShape] = Counter()
    for target in others:
        counts = Counter(base)
        counts[(min(anchor, target), max(anchor, target))] += 1
        moved[canonicalize(Multigraph.from_counts(g.n, counts))] += 1
    parts = [FactorExpr.of(shape, RingElem(-count * aut_count(shape))) for shape, count in moved.items()]
    return FactorExpr.total(parts).scale(RingElem(1) / aut_count(key))


def _has_leaf(shape: CanonicalShape) -> bool:
    return shape.is_simple and shape.graph().min_degree == 1


def _is_disconnected(shape: CanonicalShape) -> bool:
    return not shape.is_empty and not shape.graph().is_connected()


def _substitute(e: FactorExpr, rewrite: dict[CanonicalShape, FactorExpr]) -> FactorExpr:
    """Replace every factor listed in ``rewrite`` inside every monomial, multiplying the results out."""
    result = FactorExpr.scalar(e.constant)
    for key, coefficient in e.terms.items():
        product = FactorExpr.scalar(coefficient)
        for shape in key:
            product = product * (rewrite[shape] if shape in rewrite else FactorExpr.of(shape))
        result = result + product
    return result


def _power_reduce_all(e: FactorExpr) -> FactorExpr:
    targets = {shape: power_reduce(shape) for shape in e.shapes() if not shape.is_simple}
    return _substitute(e, targets) if targets else e


def reduce_degree_one(e: FactorExpr) -> FactorExpr:
    """Eliminate one leaf from every shape that has one; valid on d-regular graphs with ``p = d/(n-1)``."""
    targets = {shape: degree_one_step(shape) for shape in e.shapes() if _has_leaf(shape)}
    return _power_reduce_all(_substitute(e, targets)) if targets else e


def reduce_disconnected(e: FactorExpr) -> FactorExpr:
    """Rewrite until no disconnected shape remains, as an identity on every graph."""
    current = _power_reduce_all(e)
    while True:
        targets = {shape: disconnected_step(shape) for shape in current.shapes() if _is_disconnected(shape)}
        if not targets:
            return current
        current = _power_reduce_all(_substitute(current, targets))


@cache
def reduce_shape(shape: CanonicalShape) -> FactorExpr:
    """Fully reduced form of one factor: powers first, then leaves, then disconnected shapes, recursively."""
    if shape.is_empty:
        return FactorExpr.scalar(RingElem(1))
    if is_basis_shape(shape):
        return FactorExpr.of(shape)
    if not shape.is_simple:
        step = power_reduce(shape)
    elif _has_leaf(shape):
        step = degree_one_step(shape)
    else:
        step = disconnected_step(shape)
    result = reduce_full(step)
    logger.debug(f"reduce({shape}) -> {len(result.terms)} terms")
    return result


def reduce_full(e: FactorExpr) -> FactorExpr:
    """Fixpoint of power, leaf and disconnected rewrites; the output is in the reduced basis.

    Args:
        e (FactorExpr): Any factor expression.

    Returns
    -------
        FactorExpr: Equal to ``e`` on every d-regular graph at ``p = d/(n-1)``.
    """
    return _substitute(e, {shape: reduce_shape(shape) for shape in e.shapes() if not is_basis_shape(shape)})


def trace_expansion(length: int) -> FactorExpr:
    """``tr(chi**length)`` on d-regular graphs as a reduced factor expression."""
    table = walk_types(length)
    walks = FactorExpr.total(FactorExpr.of(entry.shape, RingElem(entry.coefficient)) for entry in table.entries)
    return reduce_full(walks)
