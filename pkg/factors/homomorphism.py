"""Labelled sums of chi products over injective placements of a multigraph pattern.

For a pattern ``P`` on ``k`` vertices the labelled sum is ``L(P) = sum over injective maps f of
prod over pairs uv of chi[f(u), f(v)] ** m_uv``. It is computed by Moebius inversion over the partition lattice: the
injective sum equals the sum over partitions of ``V(P)`` of ``mu(partition) * hom(P / partition)``, where the
homomorphism sum of the quotient is an einsum contraction. Blocks containing an edge would need a diagonal entry of
chi, which is zero, so only partitions into independent sets contribute.
"""

from __future__ import annotations

import math
import string
from collections import Counter
from functools import cache
from typing import TYPE_CHECKING

import numpy as np
from loguru import logger

from graphs.canonical import canonicalize
from graphs.graph import Multigraph

if TYPE_CHECKING:
    from collections.abc import Iterator

    from numpy.typing import NDArray

    from graphs.graph import Edge

# Largest magnitude an int64 contraction may reach before switching to Python integers
INT64_SAFE_BOUND = 1 << 62

QuotientKey = tuple[int, tuple[tuple[tuple[int, int], int], ...]]


def _independent_partitions(k: int, forbidden: set[Edge]) -> Iterator[list[list[int]]]:
    """Set partitions of ``0..k-1`` into blocks containing no forbidden pair, in restricted-growth order."""
    blocks: list[list[int]] = []

    def place(vertex: int) -> Iterator[list[list[int]]]:
        if vertex == k:
            yield [list(block) for block in blocks]
            return
        for block in blocks:
            if all((min(vertex, other), max(vertex, other)) not in forbidden for other in block):
                block.append(vertex)
                yield from place(vertex + 1)
                block.pop()
        blocks.append([vertex])
        yield from place(vertex + 1)
        blocks.pop()

    yield from place(0)


def _mobius(blocks: list[list[int]]) -> int:
    return math.prod((-1) ** (len(block) - 1) * math.factorial(len(block) - 1) for block in blocks)


@cache
def moebius_terms(k: int, multiplicities: tuple[tuple[Edge, int], ...]) -> tuple[tuple[int, QuotientKey], ...]:
    """Distinct quotient patterns of a ``k``-vertex pattern with their summed Moebius coefficients.

    Quotients are merged up to isomorphism, the key being ``(block count, canonical multiplicities)``.
    """
    counts = dict(multiplicities)
    merged: Counter[QuotientKey] = Counter()
    for blocks in _independent_partitions(k, set(counts)):
        owner = {vertex: index for index, block in enumerate(blocks) for vertex in block}
        quotient: Counter[Edge] = Counter()
        for (u, v), count in counts.items():
            a, b = owner[u], owner[v]
            quotient[(min(a, b), max(a, b))] += count
        shape = canonicalize(Multigraph.from_counts(len(blocks), quotient))
        key = (len(blocks), tuple(zip(shape.edges, shape.multiplicities, strict=True)))
        merged[key] += _mobius(blocks)
    terms = tuple((coefficient, key) for key, coefficient in sorted(merged.items()) if coefficient)
    logger.debug(f"Pattern on {k} vertices with {len(counts)} pairs: {len(terms)} distinct quotients")
    return terms


def _subscripts(key: QuotientKey) -> tuple[str, list[int], int]:
    """Einsum subscripts of a quotient, the exponents of its operands and the number of edge-free blocks."""
    blocks, pairs = key
    letters = string.ascii_letters
    used = {vertex for (u, v), _ in pairs for vertex in (u, v)}
    terms = ",".join(f"{letters[u]}{letters[v]}" for (u, v), _ in pairs)
    return f"{terms}->", [count for _, count in pairs], blocks - len(used)


@cache
def _path(subscripts: str, operand_count: int, n: int) -> list[str | tuple[int, ...]]:
    shapes = [np.empty((n, n)) for _ in range(operand_count)]
    strategy = "optimal" if operand_count <= 6 else "greedy"  # noqa: PLR2004
    path, _ = np.einsum_path(subscripts, *shapes, optimize=strategy)
    return path


def homomorphism_sum(key: QuotientKey, powers: dict[int, NDArray[np.generic]], n: int) -> int | float:
    """Sum over all vertex maps of a quotient pattern, given elementwise powers of the chi matrix by exponent."""
    subscripts, exponents, free_blocks = _subscripts(key)
    factor = n**free_blocks
    if not exponents:
        return factor
    operands = [powers[exponent] for exponent in exponents]
    value = np.einsum(subscripts, *operands, optimize=_path(subscripts, len(operands), n))
    if operands[0].dtype == object:
        return factor * int(value)
    if np.issubdtype(operands[0].dtype, np.integer):
        return factor * int(value)
    return factor * float(value)


def pattern_key(pattern: Multigraph) -> tuple[int, tuple[tuple[Edge, int], ...]]:
    return pattern.n, pattern.multiplicities


def labelled_sum_float(pattern: Multigraph, chi: NDArray[np.float64]) -> float:
    """``L(pattern)`` in floating point. ``pattern.n`` is the number of placed vertices, isolated ones included."""
    n = chi.shape[0]
    if pattern.n > n:
        return 0.0
    exponents = {count for _, count in pattern.multiplicities}
    powers = {exponent: chi**exponent for exponent in exponents}
    total = 0.0
    for coefficient, key in moebius_terms(*pattern_key(pattern)):
        total += coefficient * homomorphism_sum(key, powers, n)
    return total


def labelled_sum_int(pattern: Multigraph, integer_chi: NDArray[np.int64]) -> int:
    """``L(pattern)`` for the integer matrix ``Y``, exactly."""
    n = integer_chi.shape[0]
    if pattern.n > n:
        return 0
    largest = int(np.abs(integer_chi).max()) if integer_chi.size else 0
    total_multiplicity = sum(count for _, count in pattern.multiplicities)
    bound = n**pattern.n * largest**total_multiplicity
    base = integer_chi if bound < INT64_SAFE_BOUND else integer_chi.astype(object)
    exponents = {count for _, count in pattern.multiplicities}
    powers = {exponent: base**exponent for exponent in exponents}
    total = 0
    for coefficient, key in moebius_terms(*pattern_key(pattern)):
        total += coefficient * int(homomorphism_sum(key, powers, n))
    return total
