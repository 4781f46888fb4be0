from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np
import pytest

from graphs.canonical import CanonicalShape, aut_count, canonicalize
from graphs.counting import count_embeddings, count_shape, count_short_cycles, count_subgraphs
from graphs.exceptions import GraphError, HypothesisViolationError
from graphs.graph import Graph, Multigraph
from graphs.io import read_records, write_records
from graphs.overlay import ComponentTag, OverlayMode, overlay_classify
from graphs.shapes import complete, cycle, matching, named_shape, parse_shape_list, path, star


def test_edges_are_normalised_and_bounded() -> None:
    g = Graph.from_edges([(2, 0), (1, 2)])
    assert g.edges == frozenset({(0, 2), (1, 2)})
    assert g.n == 3
    with pytest.raises(GraphError):
        Graph(2, frozenset({(0, 2)}))
    with pytest.raises(GraphError):
        Graph(3, frozenset({(1, 1)}))


def test_structural_helpers() -> None:
    assert cycle(5).is_cycle()
    assert not path(5).is_cycle()
    assert star(3).is_star()
    assert Graph.from_edges([(0, 1)]).is_star()
    assert not path(4).is_star()
    assert len(matching(3).components()) == 3
    assert not matching(2).is_connected()
    assert cycle(5).complement().is_cycle()


def test_canonical_form_is_isomorphism_invariant() -> None:
    relabelled = Graph.from_edges([(3, 1), (1, 0), (0, 2)])
    assert canonicalize(relabelled) == canonicalize(path(4))
    assert canonicalize(cycle(4)) != canonicalize(path(4))
    isolated = Graph(10, frozenset({(7, 9)}))
    assert canonicalize(isolated) == canonicalize(Graph.from_edges([(0, 1)]))


@pytest.mark.parametrize(
    ("shape", "expected"),
    [(cycle(3), 6), (cycle(4), 8), (cycle(5), 10), (path(4), 2), (star(3), 6), (complete(4), 24), (matching(2), 8)],
)
def test_automorphism_counts(shape: Graph, expected: int) -> None:
    assert aut_count(shape) == expected


def test_multigraph_automorphisms_respect_multiplicity() -> None:
    doubled_end = Multigraph.from_counts(3, {(0, 1): 2, (1, 2): 1})
    assert aut_count(doubled_end) == 1
    assert aut_count(Multigraph.from_counts(3, {(0, 1): 2, (1, 2): 2})) == 2


def test_subgraph_counts() -> None:
    k4 = complete(4)
    assert count_subgraphs(k4, cycle(3)) == 4
    assert count_subgraphs(k4, cycle(4)) == 3
    assert count_subgraphs(k4, path(4)) == 12
    assert count_embeddings(k4, cycle(3)) == 24
    assert count_subgraphs(cycle(5), cycle(3)) == 0


def test_trace_counts_match_search(g63: list[Graph]) -> None:
    for g in g63[:20]:
        assert count_short_cycles(g, 3) == count_subgraphs(g, cycle(3))
        assert count_short_cycles(g, 4) == count_subgraphs(g, cycle(4))
    assert count_shape(complete(5), cycle(4)) == 15
    with pytest.raises(ValueError, match="length 3 and 4"):
        count_short_cycles(complete(5), 5)


def test_named_shapes() -> None:
    assert named_shape("C4") == cycle(4)
    assert named_shape("P3").edge_count == 2
    assert named_shape("S2") == star(2)
    assert named_shape("0-1,1-2,0-2") == cycle(3)
    assert parse_shape_list("C3,P4,0-1;1-2") == [cycle(3), path(4), path(3)]
    with pytest.raises(GraphError):
        named_shape("X9")
    with pytest.raises(GraphError):
        named_shape("C2")


def test_records_round_trip_through_text() -> None:
    graphs = [cycle(4), Graph(3, frozenset())]
    text = write_records(graphs)
    assert text.startswith("4 4\n0 1\n")
    assert read_records(text) == graphs
    multi = Multigraph.from_counts(3, {(0, 1): 2, (1, 2): 1})
    assert read_records(write_records([multi])) == [multi]


def test_records_reject_bad_headers() -> None:
    with pytest.raises(GraphError):
        read_records("3\n0 1\n")
    with pytest.raises(GraphError):
        read_records("3 x\n")


def test_records_reject_repeated_pairs() -> None:
    with pytest.raises(GraphError, match="more than once"):
        read_records("3 2\n0 1\n0 1\n")
    with pytest.raises(GraphError, match="more than once"):
        read_records("3 2\n0 1\n1 0 2\n")


def test_records_with_forced_kind() -> None:
    empty = Multigraph(4, ())
    text = write_records([empty, Multigraph.from_counts(3, {(0, 1): 2})])
    assert read_records(text)[0] == Graph(4, frozenset())
    assert read_records(text, multigraph=True) == [empty, Multigraph.from_counts(3, {(0, 1): 2})]
    assert read_records("2 1\n0 1\n", multigraph=True) == [Multigraph.from_counts(2, {(0, 1): 1})]
    with pytest.raises(GraphError, match="multiplicity"):
        read_records(text, multigraph=False)


def test_overlay_of_one_cycle_is_tight() -> None:
    report = overlay_classify([cycle(5)])
    assert report.lhs == report.rhs == Fraction(5, 2)
    assert report.classification == (ComponentTag.ISOLATED_SINGLE_CYCLE,)


def test_double_overlay_is_tight() -> None:
    report = overlay_classify([cycle(4), cycle(4)])
    assert report.equality
    assert report.classification == (ComponentTag.PERFECT_DOUBLE_OVERLAY,)


def test_partial_overlay_is_strict() -> None:
    shifted = Graph.from_edges([(0, 1), (1, 2), (2, 4), (4, 0)], n=5)
    report = overlay_classify([cycle(4).relabel({i: i for i in range(4)}, 5), shifted])
    assert report.lhs < report.rhs
    assert report.classification == (ComponentTag.STRICT_INEQUALITY,)


def test_cycles_and_doubled_edges_need_a_cycle_per_component() -> None:
    doubled = Multigraph.from_counts(6, {(4, 5): 2})
    with pytest.raises(HypothesisViolationError):
        overlay_classify([cycle(3).relabel({0: 0, 1: 1, 2: 2}, 6), doubled], OverlayMode.CYCLES_AND_DOUBLED_EDGES)


def _all_graphs(n: int) -> list[Graph]:
    pairs = list(combinations(range(n), 2))
    masks = range(1 << len(pairs))
    return [Graph(n, frozenset(pair for bit, pair in enumerate(pairs) if mask >> bit & 1)) for mask in masks]


def _check_canonical_classes(n: int, expected_classes: int) -> None:
    classes: Counter[CanonicalShape] = Counter(canonicalize(g) for g in _all_graphs(n))
    assert len(classes) == expected_classes
    for shape, size in classes.items():
        isolated = n - shape.vertex_count
        assert size * aut_count(shape) * math.factorial(isolated) == math.factorial(n), shape


@pytest.mark.parametrize(("n", "expected_classes"), [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)])
def test_canonical_forms_split_small_graphs_into_isomorphism_classes(n: int, expected_classes: int) -> None:
    _check_canonical_classes(n, expected_classes)


@pytest.mark.slow
def test_canonical_forms_on_six_vertices() -> None:
    _check_canonical_classes(6, 156)


def _injective_homomorphisms(host: Graph, pattern: Graph) -> int:
    return sum(
        all(host.has_edge(image[u], image[v]) for u, v in pattern.edges)
        for image in permutations(range(host.n), pattern.n)
    )


def _embedding_oracle_check(max_vertices: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    patterns = {canonicalize(g) for n in range(2, max_vertices + 1) for g in _all_graphs(n) if g.edges}
    for _ in range(3):
        host = Graph(7, frozenset(pair for pair in combinations(range(7), 2) if rng.random() < 0.55))
        for shape in patterns:
            pattern = shape.graph()
            assert count_subgraphs(host, pattern) * aut_count(pattern) == _injective_homomorphisms(host, pattern), shape


def test_subgraph_counts_match_injective_maps() -> None:
    _embedding_oracle_check(4, 8)


@pytest.mark.slow
def test_subgraph_counts_match_injective_maps_on_five_vertices() -> None:
    _embedding_oracle_check(5, 9)


OVERLAY_SHAPES = (
    cycle(3),
    cycle(4),
    cycle(5),
    complete(4),
    Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
    Graph.from_edges([(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]),
)
OVERLAY_UNIVERSE = 7


def _random_parts(rng: np.random.Generator) -> list[Graph]:
    parts: list[Graph] = []
    for _ in range(int(rng.integers(1, 4))):
        if parts and rng.random() < 0.3:
            parts.append(parts[int(rng.integers(len(parts)))])
            continue
        shape = OVERLAY_SHAPES[int(rng.integers(len(OVERLAY_SHAPES)))]
        image = rng.permutation(OVERLAY_UNIVERSE)
        parts.append(shape.relabel({vertex: int(image[vertex]) for vertex in range(shape.n)}, OVERLAY_UNIVERSE))
    return parts


def _overlay_components(parts: list[Graph]) -> list[frozenset[int]]:
    owner = {vertex: vertex for part in parts for vertex in part.non_isolated}

    def find(vertex: int) -> int:
        while owner[vertex] != vertex:
            vertex = owner[vertex]
        return vertex

    for part in parts:
        for u, v in part.edges:
            owner[find(u)] = find(v)
    groups: dict[int, set[int]] = {}
    for vertex in owner:
        groups.setdefault(find(vertex), set()).add(vertex)
    return [frozenset(group) for group in groups.values()]


def _check_random_overlays(trials: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    seen: Counter[ComponentTag] = Counter()
    for _ in range(trials):
        parts = _random_parts(rng)
        report = overlay_classify(parts, OverlayMode.MIN_DEGREE_TWO)
        multiplicity: Counter[tuple[int, int]] = Counter(edge for part in parts for edge in part.edges)
        labelled = zip(report.components, report.classification, strict=True)
        tags = {frozenset(vertices): tag for vertices, tag in labelled}
        lhs_total = rhs_total = Fraction(0)
        for component in _overlay_components(parts):
            members = [part for part in parts if part.non_isolated[0] in component]
            singles = sum(1 for edge, count in multiplicity.items() if count == 1 and edge[0] in component)
            lhs = len(component) - Fraction(singles, 2)
            rhs = Fraction(sum(part.vertex_count for part in members), 2)
            lhs_total += lhs
            rhs_total += rhs
            assert lhs <= rhs
            tag = tags[component]
            seen[tag] += 1
            if lhs < rhs:
                assert tag is ComponentTag.STRICT_INEQUALITY
            elif len(members) == 1:
                assert members[0].is_cycle()
                assert tag is ComponentTag.ISOLATED_SINGLE_CYCLE
            else:
                assert len(members) == 2
                assert members[0].edges == members[1].edges
                assert tag is ComponentTag.PERFECT_DOUBLE_OVERLAY
        assert (report.lhs, report.rhs) == (lhs_total, rhs_total)
        assert report.equality == (lhs_total == rhs_total)
    assert set(seen) == {
        ComponentTag.ISOLATED_SINGLE_CYCLE,
        ComponentTag.PERFECT_DOUBLE_OVERLAY,
        ComponentTag.STRICT_INEQUALITY,
    }


def test_random_overlays_respect_the_vertex_inequality() -> None:
    _check_random_overlays(500, 31)


@pytest.mark.slow
def test_many_random_overlays_respect_the_vertex_inequality() -> None:
    _check_random_overlays(10_000, 32)


def test_cycle_with_doubled_pendant_trees_is_tight() -> None:
    rng = np.random.default_rng(5)
    for _ in range(50):
        k = int(rng.integers(3, 6))
        pendants = int(rng.integers(1, 4))
        n = k + pendants
        parts: list[Graph | Multigraph] = [cycle(k).relabel({vertex: vertex for vertex in range(k)}, n)]
        for child in range(k, n):
            parent = int(rng.integers(child))
            parts.append(Multigraph.from_counts(n, {(parent, child): 2}))
        report = overlay_classify(parts, OverlayMode.CYCLES_AND_DOUBLED_EDGES)
        assert report.lhs == report.rhs == Fraction(k, 2) + pendants
        assert report.classification == (ComponentTag.CYCLE_WITH_DOUBLED_PENDANT_TREES,)
