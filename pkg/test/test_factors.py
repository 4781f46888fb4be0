from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from ensemble.enumerate import enumerate_regular
from ensemble.sampler import RegularGraphSampler, expected_chi_product
from ensemble.spec import EnsembleSpec
from factors.evaluator import FactorEvaluator
from factors.exact import QuadraticNumber
from factors.exceptions import DegenerateDensityError, ShapeUnsupportedError, UnsupportedWalkLengthError
from factors.field import EdgeField
from factors.gamma import gamma, normalization_constants
from factors.homomorphism import labelled_sum_float, labelled_sum_int
from factors.walks import (
    adjacency_traces,
    cycle_gamma_via_trace,
    trace_stat,
    walk_reconstruction,
    walk_types,
)
from graphs.canonical import canonicalize
from graphs.graph import Graph, Multigraph
from graphs.shapes import complete, cycle, matching, path, star

IRREGULAR = Graph.from_edges([(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6), (0, 5)], n=7)


def _brute_labelled_sum(pattern: Multigraph, chi: np.ndarray) -> float:
    total = 0.0
    for image in permutations(range(chi.shape[0]), pattern.n):
        total += math.prod(chi[image[u], image[v]] ** count for (u, v), count in pattern.multiplicities)
    return total


def test_quadratic_numbers() -> None:
    r = Fraction(2, 9)
    root = QuadraticNumber.root(r)
    assert root * root == Fraction(2, 9)
    assert (1 + root) * (1 - root) == 1 - r
    assert float((1 + root).inverse() * (1 + root)) == pytest.approx(1.0)
    assert QuadraticNumber.root(Fraction(1, 4)) == Fraction(1, 2)


def test_field_density_and_degeneracy() -> None:
    g = cycle(6)
    field = EdgeField(g, 2)
    assert field.p == Fraction(2, 5)
    assert EdgeField(g).p == Fraction(2, 5)
    assert np.allclose(field.chi.sum(axis=0), 0.0)
    assert np.allclose(np.diag(field.chi), 0.0)
    with pytest.raises(DegenerateDensityError):
        EdgeField(complete(5), 4)
    with pytest.raises(DegenerateDensityError):
        EdgeField(Graph(5, frozenset()))


@pytest.mark.parametrize(
    "pattern",
    [
        path(3).to_multigraph(),
        cycle(3).to_multigraph(),
        Multigraph.from_counts(3, {(0, 1): 2, (1, 2): 1}),
        Multigraph.from_counts(4, {(0, 1): 1, (2, 3): 3}),
    ],
)
def test_labelled_sums_match_brute_force(pattern: Multigraph) -> None:
    field = EdgeField(IRREGULAR, p=Fraction(1, 3))
    assert labelled_sum_float(pattern, field.chi) == pytest.approx(_brute_labelled_sum(pattern, field.chi))
    exact = labelled_sum_int(pattern, field.integer_chi)
    assert exact == round(_brute_labelled_sum(pattern, field.integer_chi.astype(float)))


def test_exact_and_float_agree(g63: list[Graph]) -> None:
    for g in g63[:10]:
        exact = FactorEvaluator(EdgeField(g, 3), exact=True)
        approx = FactorEvaluator(EdgeField(g, 3))
        for shape in (cycle(3), cycle(4), path(4), star(3), complete(4)):
            assert float(exact.gamma_raw(shape)) == pytest.approx(approx.gamma_raw(shape), abs=1e-9)


def _check_constant_factors(graphs: list[Graph], n: int, d: int) -> None:
    pairs = n * (n - 1) // 2
    for g in graphs:
        evaluator = FactorEvaluator(EdgeField(g, d), exact=True)
        assert evaluator.gamma_raw(Graph.from_edges([(0, 1)])) == 0
        assert evaluator.gamma_raw(path(3)) == -pairs
        assert evaluator.gamma_raw(matching(2)) == Fraction(pairs, 2)


def test_low_order_factors_are_constant_on_regular_graphs(g63: list[Graph]) -> None:
    _check_constant_factors(g63, 6, 3)


@pytest.mark.slow
def test_low_order_factors_are_constant_on_eight_vertices(g83: list[Graph]) -> None:
    _check_constant_factors(g83, 8, 3)


def test_complement_flips_odd_factors(g63: list[Graph]) -> None:
    g62 = list(enumerate_regular(6, 2))
    assert {g.complement() for g in g63} == set(g62)
    for g in g63:
        original = FactorEvaluator(EdgeField(g, 3))
        flipped = FactorEvaluator(EdgeField(g.complement(), 2))
        for shape in (cycle(3), cycle(4), path(4), complete(4)):
            sign = (-1) ** shape.edge_count
            assert flipped.gamma_raw(shape) == pytest.approx(sign * original.gamma_raw(shape), abs=1e-9)
    for edge_set in ([(0, 1), (1, 2), (0, 2)], [(0, 1), (1, 2), (2, 3), (0, 3)], [(0, 1), (1, 2), (2, 3)]):
        sign = (-1) ** len(edge_set)
        dense = float(expected_chi_product(g63, edge_set, 6, 3))
        assert float(expected_chi_product(g62, edge_set, 6, 2)) == pytest.approx(sign * dense, abs=1e-12)


def test_normalization_constants() -> None:
    shift, scale = normalization_constants(cycle(4), 10)
    assert shift == pytest.approx(2 * 10**2 / 8)
    assert scale == pytest.approx(math.sqrt(10**4 / 8))
    assert normalization_constants(cycle(3), 10)[0] == 0.0
    with pytest.raises(ShapeUnsupportedError):
        normalization_constants(path(4), 10)


def test_gamma_normalises_where_defined(g63: list[Graph]) -> None:
    g = g63[0]
    value = gamma(g, cycle(4), 3)
    assert value.normalized == pytest.approx((value.raw - value.expectation_shift) / value.scale)
    assert gamma(g, path(3), 3).normalized is None
    assert gamma(g, path(3), 3).raw == pytest.approx(-15.0)


def test_gamma_rejects_large_shapes(g63: list[Graph]) -> None:
    with pytest.raises(ShapeUnsupportedError):
        gamma(g63[0], cycle(9), 3)


@pytest.mark.parametrize("length", [3, 4, 5, 6])
def test_walk_tables(length: int) -> None:
    table = walk_types(length)
    assert table.coefficient(canonicalize(cycle(length))) == 2 * length
    n = 9
    assert table.walk_total(n) == (n - 1) ** length + (n - 1) * (-1) ** length


def test_walk_lengths_are_bounded() -> None:
    with pytest.raises(UnsupportedWalkLengthError):
        walk_types(7)
    with pytest.raises(UnsupportedWalkLengthError):
        adjacency_traces(cycle(5), 2)


@pytest.mark.parametrize("length", [3, 4, 5, 6])
def test_trace_identity_on_oracle(g63: list[Graph], length: int) -> None:
    for g in g63:
        evaluator = FactorEvaluator(EdgeField(g, 3))
        trace = trace_stat(evaluator.field, length)
        assert float(walk_reconstruction(evaluator, length)) == pytest.approx(trace, rel=1e-9, abs=1e-9)


def test_trace_path_matches_contraction(g63: list[Graph]) -> None:
    evaluator = FactorEvaluator(EdgeField(g63[3], 3))
    for length in (3, 4, 5, 6):
        via_trace = cycle_gamma_via_trace(evaluator, length)
        assert via_trace == pytest.approx(evaluator.gamma_raw(cycle(length)), abs=1e-8)


def test_adjacency_traces() -> None:
    assert adjacency_traces(complete(4), 4) == (24, 84)
    assert adjacency_traces(cycle(5), 5) == (0, 30, 10)


@pytest.mark.slow
@pytest.mark.parametrize(("n", "d"), [(16, 8), (24, 12)])
def test_trace_path_matches_contraction_on_sampled_graphs(n: int, d: int) -> None:
    for g in RegularGraphSampler(EnsembleSpec(n, d, seed=n)).samples(100):
        evaluator = FactorEvaluator(EdgeField(g, d))
        for length in (3, 4, 5, 6):
            via_trace = gamma(g, cycle(length), d, evaluator=evaluator).raw
            generic = gamma(g, cycle(length), d, evaluator=evaluator, use_trace=False).raw
            assert via_trace == pytest.approx(generic, rel=1e-9, abs=1e-6)
