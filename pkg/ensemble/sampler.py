"""Double-edge-swap Markov chain on labelled d-regular graphs."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import TYPE_CHECKING, Self

from loguru import logger

from ensemble.prng import Xoshiro256StarStar
from ensemble.spec import EnsembleSpec, complement_spec
from factors.exact import QuadraticNumber
from factors.exceptions import DegenerateDensityError
from graphs.graph import Edge, Graph, normalize_edge

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator


def circulant_regular(n: int, d: int) -> Graph:
    """Each vertex joined to its ``d // 2`` nearest neighbours on both sides, plus antipodal pairs for odd ``d``."""
    edges = {normalize_edge(v, (v + offset) % n) for v in range(n) for offset in range(1, d // 2 + 1)}
    if d % 2:
        edges.update((v, v + n // 2) for v in range(n // 2))
    return Graph(n, frozenset(edges))


class RegularGraphSampler(object):
    """One seeded swap chain over ``G(n, d)``.

    Each step picks two distinct edges uniformly and one of the two other perfect matchings on their endpoints.
    A proposal that would create a self-loop or a duplicate edge leaves the state unchanged, which keeps the
    proposal symmetric and the uniform law stationary. For ``d > (n-1)/2`` the chain runs on the complement ensemble
    and outputs are complemented back.
    """

    def __init__(self: Self, spec: EnsembleSpec) -> None:
        self.spec = spec
        self.chain_spec = complement_spec(spec) if spec.samples_complement else spec
        self.generator = Xoshiro256StarStar.for_chain(spec.seed, spec.chain)
        start = circulant_regular(self.chain_spec.n, self.chain_spec.d)
        self.edges: list[Edge] = list(start.sorted_edges)
        self.edge_set: set[Edge] = set(self.edges)
        self.accepted = 0
        self.rejected = 0
        self.check_outputs = __debug__

    def step(self: Self) -> bool:
        """Propose one swap; returns whether it was accepted."""
        m = len(self.edges)
        if m < 2:  # noqa: PLR2004
            self.rejected += 1
            return False
        i = self.generator.below(m)
        j = self.generator.below(m - 1)
        if j >= i:
            j += 1
        a, b = self.edges[i]
        c, e = self.edges[j]
        first, second = ((a, c), (b, e)) if self.generator.below(2) == 0 else ((a, e), (b, c))
        if first[0] == first[1] or second[0] == second[1]:
            self.rejected += 1
            return False
        first, second = normalize_edge(*first), normalize_edge(*second)
        if first in self.edge_set or second in self.edge_set:
            self.rejected += 1
            return False
        self.edge_set.difference_update((self.edges[i], self.edges[j]))
        self.edge_set.update((first, second))
        self.edges[i], self.edges[j] = first, second
        assert Counter((a, b, c, e)) == Counter((*first, *second)), "swap changed the degree sequence"  # noqa: S101
        self.accepted += 1
        return True

    def advance(self: Self, swaps: int) -> None:
        for _ in range(swaps):
            self.step()

    def current(self: Self) -> Graph:
        g = Graph(self.chain_spec.n, frozenset(self.edge_set))
        result = g.complement() if self.spec.samples_complement else g
        if self.check_outputs and not result.is_regular(self.spec.d):
            msg = f"Sampler produced a non-{self.spec.d}-regular graph"
            raise AssertionError(msg)
        return result

    def samples(self: Self, count: int) -> Iterator[Graph]:
        """Burn in once, then yield ``count`` graphs separated by ``thinning`` proposed swaps."""
        burn_in, thinning = self.chain_spec.burn_in, self.chain_spec.thinning
        logger.debug(
            f"Chain {self.spec.chain} of G({self.spec.n},{self.spec.d}): burn-in {burn_in}, thinning {thinning}"
            + (" on the complement ensemble" if self.spec.samples_complement else ""),
        )
        self.advance(burn_in)
        for index in range(count):
            if index:
                self.advance(thinning)
            yield self.current()
        total = self.accepted + self.rejected
        if total:
            logger.debug(f"Chain {self.spec.chain}: accepted {self.accepted}/{total} proposed swaps")


def sample_regular(spec: EnsembleSpec) -> Graph:
    """One graph from the chain described by ``spec``."""
    return next(RegularGraphSampler(spec).samples(1))


def expected_chi_product(graphs: Iterable[Graph], edge_set: Iterable[Edge], n: int, d: int) -> QuadraticNumber:
    """Exact mean of ``prod(chi_e for e in edge_set)`` over ``graphs``, taken as an oracle ensemble ``G(n, d)``.

    Args:
        graphs (Iterable[Graph]): The ensemble, typically ``enumerate_regular(n, d)``.
        edge_set (Iterable[Edge]): Pairs of ``0..n-1``.
        n (int): Vertex count.
        d (int): Degree, with ``0 < d < n-1``.

    Returns
    -------
        QuadraticNumber: The expectation in ``Q(sqrt(p(1-p)))``.
    """
    p = Fraction(d, n - 1)
    if not 0 < p < 1:
        msg = f"Density d/(n-1) = {p} leaves chi undefined"
        raise DegenerateDensityError(msg)
    r = p * (1 - p)
    pairs = [normalize_edge(u, v) for u, v in edge_set]
    total = Fraction(0)
    count = 0
    for g in graphs:
        product = Fraction(1)
        for pair in pairs:
            product *= (1 if pair in g.edges else 0) - p
        total += product
        count += 1
    if count == 0:
        msg = "expected_chi_product needs a non-empty ensemble"
        raise ValueError(msg)
    return QuadraticNumber.rational(total / count, r) / QuadraticNumber.root(r) ** len(pairs)
