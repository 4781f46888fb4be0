"""Overlays of embedded graphs and the equality cases of the overlay vertex inequality.

For parts ``H_1..H_k`` overlaid into a multigraph ``G`` the inequality reads
``v(G) - |E_sing(G)|/2 <= sum(v(H_i))/2``. Two families of parts are supported: connected graphs of minimum degree at
least two, and cycles mixed with doubled edges where every component must contain a cycle.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Self

from loguru import logger

from graphs.exceptions import GraphError, HypothesisViolationError
from graphs.graph import Edge, Graph, Multigraph

if TYPE_CHECKING:
    from collections.abc import Sequence

Part = Graph | Multigraph


class OverlayMode(Enum):
    """Which family of parts is being overlaid."""

    MIN_DEGREE_TWO = "min-degree-two"
    CYCLES_AND_DOUBLED_EDGES = "cycles-and-doubled-edges"

    def __str__(self: Self) -> str:
        return str(self.value)


class ComponentTag(Enum):
    """Structural classification of one connected component of an overlay."""

    ISOLATED_SINGLE_CYCLE = "isolated-single-cycle"
    PERFECT_DOUBLE_OVERLAY = "perfect-double-overlay"
    CYCLE_WITH_DOUBLED_PENDANT_TREES = "cycle-with-doubled-pendant-trees"
    STRICT_INEQUALITY = "strict-inequality"

    def __str__(self: Self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class OverlayReport(object):
    """Both sides of the overlay inequality with a per-component classification.

    Attributes
    ----------
        lhs (Fraction): ``v(G) - |E_sing|/2``.
        rhs (Fraction): ``sum(v(H_i))/2``.
        equality (bool): ``lhs == rhs``.
        components (tuple[tuple[int, ...], ...]): Vertex sets of the components of ``G``.
        classification (tuple[ComponentTag, ...]): One tag per component, in the same order.
    """

    lhs: Fraction
    rhs: Fraction
    equality: bool
    components: tuple[tuple[int, ...], ...]
    classification: tuple[ComponentTag, ...]


def _as_multigraph(part: Part) -> Multigraph:
    return part.to_multigraph() if isinstance(part, Graph) else part


def overlay(copies: Sequence[Part]) -> Multigraph:
    """Superimpose embedded copies over a common label universe, summing edge multiplicities."""
    if not copies:
        return Multigraph(0, ())
    n = max(copy.n for copy in copies)
    counts: Counter[Edge] = Counter()
    for copy in copies:
        counts.update(_as_multigraph(copy).counts)
    return Multigraph.from_counts(n, counts)


def _is_doubled_edge(part: Part) -> bool:
    return isinstance(part, Multigraph) and len(part.multiplicities) == 1 and part.multiplicities[0][1] == 2


def _is_cycle_part(part: Part) -> bool:
    return isinstance(part, Graph) and part.is_cycle()


def _validate(parts: Sequence[Part], mode: OverlayMode) -> None:
    for position, part in enumerate(parts):
        if mode is OverlayMode.MIN_DEGREE_TWO:
            if not isinstance(part, Graph) or not part.edges or not part.is_connected() or part.min_degree < 2:
                msg = f"Part {position} is not a connected simple graph of minimum degree at least 2: {part}"
                raise HypothesisViolationError(msg)
        elif not (_is_cycle_part(part) or _is_doubled_edge(part)):
            msg = f"Part {position} is neither a cycle nor a doubled edge: {part}"
            raise HypothesisViolationError(msg)


def _strip_doubled_pendants(component: Multigraph) -> tuple[Multigraph, bool]:
    """Repeatedly delete leaves hanging on multiplicity-2 edges; report whether anything was removed."""
    counts = dict(component.counts)
    stripped = False
    while True:
        degree: Counter[int] = Counter()
        for u, v in counts:
            degree[u] += 1
            degree[v] += 1
        leaf_edges = [edge for edge in counts if counts[edge] == 2 and (degree[edge[0]] == 1 or degree[edge[1]] == 1)]
        if not leaf_edges or len(counts) == 1:
            break
        del counts[leaf_edges[0]]
        stripped = True
    return Multigraph.from_counts(component.n, counts), stripped


def _structural_tag(component: Multigraph, parts: list[Part], mode: OverlayMode) -> ComponentTag | None:
    multiplicities = {count for _, count in component.multiplicities}
    if mode is OverlayMode.MIN_DEGREE_TWO:
        if multiplicities == {1} and component.underlying().is_cycle() and len(parts) == 1:
            return ComponentTag.ISOLATED_SINGLE_CYCLE
        if multiplicities == {2} and len(parts) == 2 and parts[0].edges == parts[1].edges:
            return ComponentTag.PERFECT_DOUBLE_OVERLAY
        return None
    core, stripped = _strip_doubled_pendants(component)
    if not core.underlying().is_cycle():
        return None
    core_multiplicities = {count for _, count in core.multiplicities}
    cycles = [part for part in parts if _is_cycle_part(part)]
    if core_multiplicities == {1} and len(cycles) == 1:
        tag = ComponentTag.ISOLATED_SINGLE_CYCLE
    elif core_multiplicities == {2} and len(cycles) == 2 and cycles[0].edges == cycles[1].edges:
        tag = ComponentTag.PERFECT_DOUBLE_OVERLAY
    else:
        return None
    return ComponentTag.CYCLE_WITH_DOUBLED_PENDANT_TREES if stripped else tag


def overlay_classify(parts: Sequence[Part], mode: OverlayMode = OverlayMode.MIN_DEGREE_TWO) -> OverlayReport:
    """Evaluate the overlay inequality for ``parts`` and classify each component of the overlay.

    Args:
        parts (Sequence[Graph | Multigraph]): Embedded parts over a common label universe. Doubled edges are given
            as a ``Multigraph`` with a single pair of multiplicity 2.
        mode (OverlayMode): The family the parts belong to.

    Returns
    -------
        OverlayReport: Both sides as exact rationals and one tag per component.
    """
    if not parts:
        msg = "At least one part is required"
        raise GraphError(msg)
    _validate(parts, mode)
    combined = overlay(parts)
    components = combined.components()
    owner = {vertex: index for index, component in enumerate(components) for vertex in component}
    grouped: list[list[Part]] = [[] for _ in components]
    for part in parts:
        grouped[owner[part.non_isolated[0]]].append(part)

    lhs_total = Fraction(0)
    rhs_total = Fraction(0)
    tags: list[ComponentTag] = []
    for component, members in zip(components, grouped, strict=True):
        if mode is OverlayMode.CYCLES_AND_DOUBLED_EDGES and not any(_is_cycle_part(part) for part in members):
            msg = f"Component on vertices {component} contains no participating cycle"
            raise HypothesisViolationError(msg)
        restricted = combined.restrict(component)
        lhs = len(component) - Fraction(len(restricted.singles()), 2)
        rhs = Fraction(sum(part.vertex_count for part in members), 2)
        lhs_total += lhs
        rhs_total += rhs
        if lhs < rhs:
            tags.append(ComponentTag.STRICT_INEQUALITY)
            continue
        tag = _structural_tag(restricted, members, mode)
        if tag is None:
            msg = f"Component on vertices {component} attains equality without a recognised structure"
            raise HypothesisViolationError(msg)
        tags.append(tag)
    logger.debug(f"Overlay of {len(parts)} parts: lhs={lhs_total} rhs={rhs_total} tags={[str(t) for t in tags]}")
    return OverlayReport(
        lhs=lhs_total,
        rhs=rhs_total,
        equality=lhs_total == rhs_total,
        components=tuple(components),
        classification=tuple(tags),
    )
