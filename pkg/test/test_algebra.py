from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from algebra.evaluate import evaluate
from algebra.exceptions import ExpansionError, PoleAtEvaluationError
from algebra.expansion import expand_subgraph_count, subgraph_classes
from algebra.expr import FactorExpr, format_expr
from algebra.reduction import power_coefficients, power_reduce, reduce_full, trace_expansion
from algebra.ring import N, P, R, RingElem, rational
from ensemble.sampler import RegularGraphSampler
from ensemble.spec import EnsembleSpec
from factors.evaluator import FactorEvaluator
from factors.field import EdgeField
from factors.walks import trace_stat
from graphs.canonical import canonicalize
from graphs.counting import count_subgraphs
from graphs.graph import Graph, Multigraph
from graphs.shapes import complete, cycle, path, star


REDUCTION_SHAPES = (path(3), path(4), star(3), Graph.from_edges([(0, 1), (2, 3), (3, 4), (2, 4)]))


def _random_graph(rng: np.random.Generator, n: int, density: float) -> Graph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    return Graph(n, frozenset(pairs))


def test_ring_arithmetic() -> None:
    q = RingElem.q()
    assert q * q == RingElem(R)
    assert (q + 1) * (q + 1).inverse() == 1
    assert RingElem(3) / 3 == 1
    assert RingElem(1, 1).evaluate(5, 2) == 1 + RingElem.q().evaluate(5, 2)


def test_poles_are_reported() -> None:
    with pytest.raises(PoleAtEvaluationError):
        RingElem(rational(1) / (N - 6)).evaluate(6, 3)


def test_power_coefficients() -> None:
    alpha, beta = power_coefficients(2)
    assert alpha == 1
    assert beta == -RingElem.c()
    assert power_coefficients(1) == (RingElem(0), RingElem(1))


def test_power_reduce_of_simple_shape_is_identity() -> None:
    assert power_reduce(canonicalize(cycle(4))) == FactorExpr.of(cycle(4))


def test_squared_edge_reduces_to_constant_and_edge() -> None:
    doubled = Multigraph.from_counts(2, {(0, 1): 2})
    reduced = power_reduce(doubled)
    assert reduced.constant == RingElem(N * (N - 1) / 2)
    assert reduced.coefficient(Graph.from_edges([(0, 1)])) == -RingElem.c()


def test_path_on_three_vertices_reduces_to_constant() -> None:
    reduced = reduce_full(FactorExpr.of(path(3)))
    assert not reduced.terms
    assert reduced.constant == RingElem(-N * (N - 1) / 2)


def test_path_on_four_vertices_reduces_to_triangles() -> None:
    reduced = reduce_full(FactorExpr.of(path(4)))
    assert reduced.shapes() == {canonicalize(cycle(3))}
    assert reduced.coefficient(cycle(3)) == -3
    assert reduced.constant == RingElem(0, -(2 * P - 1) * N * (N - 1) / (2 * R))
    assert reduced.is_reduced()


@pytest.mark.parametrize("shape", REDUCTION_SHAPES)
def test_reductions_hold_on_oracle(g63: list[Graph], shape: Graph) -> None:
    reduced = reduce_full(FactorExpr.of(shape))
    assert reduced.is_reduced()
    for g in g63:
        evaluator = FactorEvaluator(EdgeField(g, 3), exact=True)
        assert evaluate(reduced, g, d=3, evaluator=evaluator) == evaluator.gamma_raw(shape)


def test_reduction_holds_on_sampled_dense_graphs() -> None:
    reduced = reduce_full(FactorExpr.of(path(4)))
    for g in RegularGraphSampler(EnsembleSpec(20, 10, seed=3)).samples(5):
        evaluator = FactorEvaluator(EdgeField(g, 10))
        assert float(evaluate(reduced, g, d=10, evaluator=evaluator)) == pytest.approx(
            evaluator.gamma_raw(path(4)),
            rel=1e-9,
            abs=1e-9,
        )


@pytest.mark.slow
@pytest.mark.parametrize("shape", REDUCTION_SHAPES)
def test_reductions_hold_on_many_dense_samples(shape: Graph) -> None:
    reduced = reduce_full(FactorExpr.of(shape))
    for g in RegularGraphSampler(EnsembleSpec(20, 10, seed=41)).samples(50):
        evaluator = FactorEvaluator(EdgeField(g, 10))
        expected = evaluator.gamma_raw(shape)
        assert float(evaluate(reduced, g, d=10, evaluator=evaluator)) == pytest.approx(expected, rel=1e-9, abs=1e-9)


def test_format_is_stable() -> None:
    text = format_expr(reduce_full(FactorExpr.of(path(3))))
    assert text.count("\n") == 1
    assert text.rstrip().endswith("| const")
    assert format_expr(reduce_full(FactorExpr.of(path(3)))) == text
    assert format_expr(FactorExpr.of(cycle(3))).splitlines()[0] == "1 | 0 | 0-1,0-2,1-2"


def test_subgraph_classes_of_triangle() -> None:
    classes = subgraph_classes(cycle(3))
    assert sum(classes.values()) == 8
    assert classes[canonicalize(path(3))] == 3
    assert classes[canonicalize(cycle(3))] == 1


def test_expansion_rejects_unsupported_shapes() -> None:
    with pytest.raises(ExpansionError):
        expand_subgraph_count(Graph(3, frozenset()))
    with pytest.raises(ExpansionError):
        expand_subgraph_count(Graph.from_edges([(0, 1), (2, 3)]))
    with pytest.raises(ExpansionError):
        expand_subgraph_count(cycle(9))


def test_triangle_expansion_vanishes_on_pentagon() -> None:
    assert evaluate(expand_subgraph_count(cycle(3)), cycle(5), d=2, exact=True) == 0


@pytest.mark.parametrize("shape", [cycle(3), cycle(4), path(4), star(3)])
def test_expansion_counts_subgraphs_on_arbitrary_graphs(shape: Graph) -> None:
    rng = np.random.default_rng(17)
    expansion = expand_subgraph_count(shape)
    for _ in range(4):
        g = _random_graph(rng, 9, 0.4)
        assert evaluate(expansion, g, p=Fraction(2, 5), exact=True) == count_subgraphs(g, shape)


@pytest.mark.slow
@pytest.mark.parametrize("shape", [cycle(3), cycle(4), cycle(5), path(4), complete(4)])
def test_expansion_on_many_twelve_vertex_graphs(shape: Graph) -> None:
    rng = np.random.default_rng(2024)
    expansion = expand_subgraph_count(shape)
    for _ in range(100):
        g = _random_graph(rng, 12, float(rng.uniform(0.2, 0.8)))
        count = count_subgraphs(g, shape)
        if g.edge_count in (0, 66):
            continue
        assert evaluate(expansion, g, exact=True) == count
        assert float(evaluate(expansion, g)) == pytest.approx(count, rel=1e-9, abs=1e-6)


@pytest.mark.parametrize("length", [3, 4, 5])
def test_trace_expansion_matches_trace(g63: list[Graph], length: int) -> None:
    expansion = trace_expansion(length)
    assert expansion.coefficient(cycle(length)) == 2 * length
    for g in g63[:10]:
        evaluator = FactorEvaluator(EdgeField(g, 3))
        assert float(evaluate(expansion, g, d=3, evaluator=evaluator)) == pytest.approx(
            trace_stat(evaluator.field, length),
            abs=1e-8,
        )
