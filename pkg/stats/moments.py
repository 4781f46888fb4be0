"""Streaming joint moments with exact power sums."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cache
from itertools import product
from typing import TYPE_CHECKING, Self

import numpy as np

from stats.exceptions import InsufficientDataError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from numpy.typing import NDArray

MAX_MOMENT_DEGREE = 8
Exponent = tuple[int, ...]


@cache
def exponents(dimension: int, degree: int) -> tuple[Exponent, ...]:
    """Every exponent vector of total degree ``1..degree`` in ``dimension`` coordinates."""
    return tuple(
        powers for powers in product(range(degree + 1), repeat=dimension) if 0 < sum(powers) <= degree
    )


def unit(dimension: int, *coordinates: int) -> Exponent:
    powers = [0] * dimension
    for coordinate in coordinates:
        powers[coordinate] += 1
    return tuple(powers)


class MomentAccumulator(object):
    """Joint power sums ``sum(prod(x_i ** a_i))`` of a stream of ``dimension``-vectors up to total degree ``degree``.

    Sums are kept as ``Fraction`` so that merging and reordering are exact. With ``retain`` the raw samples are kept
    too, in arrival order, for the distributional diagnostics that need them.
    """

    def __init__(self: Self, dimension: int, degree: int = MAX_MOMENT_DEGREE, *, retain: bool = False) -> None:
        if dimension < 1 or not 2 <= degree <= MAX_MOMENT_DEGREE:  # noqa: PLR2004
            msg = f"Unsupported accumulator shape: dimension={dimension} degree={degree}"
            raise ValueError(msg)
        self.dimension = dimension
        self.degree = degree
        self.retain = retain
        self.count = 0
        self.sums: dict[Exponent, Fraction] = dict.fromkeys(exponents(dimension, degree), Fraction(0))
        self.samples: list[tuple[float, ...]] = []

    def add(self: Self, sample: Sequence[float]) -> None:
        if len(sample) != self.dimension:
            msg = f"Expected {self.dimension} coordinates, got {len(sample)}"
            raise ValueError(msg)
        values = [Fraction(float(value)) for value in sample]
        powers = [[Fraction(1)] for _ in values]
        for coordinate, value in enumerate(values):
            for _ in range(self.degree):
                powers[coordinate].append(powers[coordinate][-1] * value)
        for key in self.sums:
            term = Fraction(1)
            for coordinate, power in enumerate(key):
                if power:
                    term *= powers[coordinate][power]
            self.sums[key] += term
        self.count += 1
        if self.retain:
            self.samples.append(tuple(float(value) for value in sample))

    def extend(self: Self, samples: Iterable[Sequence[float]]) -> Self:
        for sample in samples:
            self.add(sample)
        return self

    def merge(self: Self, other: MomentAccumulator) -> MomentAccumulator:
        """Accumulator of ``self``'s stream followed by ``other``'s."""
        if (self.dimension, self.degree) != (other.dimension, other.degree):
            msg = "Accumulators of different shapes cannot be merged"
            raise ValueError(msg)
        merged = MomentAccumulator(self.dimension, self.degree, retain=self.retain and other.retain)
        merged.count = self.count + other.count
        merged.sums = {key: self.sums[key] + other.sums[key] for key in self.sums}
        if merged.retain:
            merged.samples = [*self.samples, *other.samples]
        return merged

    def _require(self: Self, minimum: int, what: str) -> None:
        if self.count < minimum:
            msg = f"{what} needs at least {minimum} samples, have {self.count}"
            raise InsufficientDataError(msg)

    def exact_mean(self: Self) -> list[Fraction]:
        self._require(1, "Mean")
        return [self.sums[unit(self.dimension, i)] / self.count for i in range(self.dimension)]

    def mean(self: Self) -> NDArray[np.float64]:
        return np.array([float(value) for value in self.exact_mean()])

    def exact_covariance(self: Self) -> list[list[Fraction]]:
        """Unbiased covariance with the ``count - 1`` divisor."""
        self._require(2, "Covariance")
        first = [self.sums[unit(self.dimension, i)] for i in range(self.dimension)]
        return [
            [
                (self.sums[unit(self.dimension, i, j)] - first[i] * first[j] / self.count) / (self.count - 1)
                for j in range(self.dimension)
            ]
            for i in range(self.dimension)
        ]

    def covariance(self: Self) -> NDArray[np.float64]:
        return np.array([[float(value) for value in row] for row in self.exact_covariance()])

    def variance(self: Self) -> NDArray[np.float64]:
        return np.diag(self.covariance()).copy()

    def central_moment(self: Self, powers: Exponent) -> Fraction:
        """``mean(prod((x_i - mean_i) ** a_i))`` by binomial expansion of the raw power sums."""
        if sum(powers) > self.degree:
            msg = f"Moment of degree {sum(powers)} exceeds accumulated degree {self.degree}"
            raise ValueError(msg)
        mean = self.exact_mean()
        total = Fraction(0)
        for lower in product(*(range(power + 1) for power in powers)):
            weight = Fraction(1)
            for coordinate, (power, kept) in enumerate(zip(powers, lower, strict=True)):
                weight *= math.comb(power, kept) * (-mean[coordinate]) ** (power - kept)
            raw = self.sums[lower] / self.count if any(lower) else Fraction(1)
            total += weight * raw
        return total

    def standardized_moment(self: Self, powers: Exponent) -> float:
        """Central mixed moment divided by ``prod(sd_i ** a_i)`` with population standard deviations."""
        self._require(2, "Standardized moment")
        scale = 1.0
        for coordinate, power in enumerate(powers):
            if power:
                second = float(self.central_moment(unit(self.dimension, coordinate, coordinate)))
                if second <= 0:
                    return math.nan
                scale *= second ** (power / 2)
        return float(self.central_moment(powers)) / scale

    def sample_array(self: Self) -> NDArray[np.float64]:
        if not self.retain:
            msg = "Samples were not retained by this accumulator"
            raise InsufficientDataError(msg)
        return np.array(self.samples, dtype=np.float64).reshape(-1, self.dimension)


def estimate_moments(
    samples: Iterable[Sequence[float]],
    dimension: int | None = None,
    degree: int = MAX_MOMENT_DEGREE,
    *,
    retain: bool = False,
) -> MomentAccumulator:
    """Accumulate a finite stream; ``dimension`` is taken from the first sample when omitted."""
    iterator = iter(samples)
    if dimension is None:
        first = next(iterator, None)
        if first is None:
            msg = "Cannot infer the dimension of an empty stream"
            raise InsufficientDataError(msg)
        accumulator = MomentAccumulator(len(first), degree, retain=retain)
        accumulator.add(first)
    else:
        accumulator = MomentAccumulator(dimension, degree, retain=retain)
    return accumulator.extend(iterator)
