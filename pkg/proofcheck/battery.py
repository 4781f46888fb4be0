"""Randomised battery over the inequality domains and the empirical Gaussian-band threshold."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Self

import numpy as np
from loguru import logger

from proofcheck.inequalities import (
    DEFAULT_M0,
    SLACK_TOLERANCE,
    InequalityCase,
    LemmaId,
    check_inequality,
    elementary_symmetric,
    gaussian_integral,
)

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable

    from numpy.typing import NDArray

    Batch = tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64], NDArray[np.float64] | None]
    PointAt = Callable[[int], tuple]

BATCH_SIZE = 100_000
MAX_VECTOR_LENGTH = 8
MAX_SYMMETRIC_POWER = 5
MAX_MOMENT_POWER = 12
MAX_BAND_M = 1e4
QUADRATURE_TRIALS = 2_000
QUADRATURE_LEMMAS = frozenset({LemmaId.GAUSSIAN_BAND, LemmaId.GAUSSIAN_MOMENT})
BAND_CHECK_POINTS = (1e1, 1e2, 1e3, 1e4)


@dataclass(frozen=True)
class LemmaSummary(object):
    """Outcome of the battery for one inequality."""

    lemma: LemmaId
    trials: int
    violations: int
    worst: InequalityCase

    @property
    def passed(self: Self) -> bool:
        return self.violations == 0

    @property
    def worst_slack(self: Self) -> float:
        return self.worst.slack


def _modulus_batch(rng: np.random.Generator, size: int) -> tuple[PointAt, Batch]:
    lam = rng.uniform(0.0, 1.0, size)
    x = rng.uniform(-math.pi, math.pi, size)
    spread = lam * (1 - lam)
    lhs = np.abs(1 + lam * (np.exp(1j * x) - 1))
    rhs = np.exp(-spread * x**2 / 2 + spread * x**4 / 24)
    gap = np.abs(lhs - np.sqrt(np.clip(1 - 2 * spread * (1 - np.cos(x)), 0.0, None)))
    return lambda i: (float(lam[i]), float(x[i])), (lhs, rhs, np.full(size, -np.inf), gap)


def _vectors(rng: np.random.Generator, size: int, length: int) -> NDArray[np.float64]:
    return rng.uniform(-1.0, 1.0, (size, length)) * rng.exponential(1.0, (size, 1))


def _pair_batch(
    fourth: bool,  # noqa: FBT001
) -> Callable[[np.random.Generator, int], tuple[PointAt, Batch]]:
    def batch(rng: np.random.Generator, size: int) -> tuple[PointAt, Batch]:
        length = int(rng.integers(2, MAX_VECTOR_LENGTH + 1))
        x = _vectors(rng, size, length)
        rows, columns = np.triu_indices(length, k=1)
        pairs = x[:, rows] + x[:, columns]
        if fourth:
            lhs, rhs = np.sum(pairs**4, axis=1), 8 * (length - 1) * np.sum(x**4, axis=1)
        else:
            lhs, rhs = (length - 2) * np.sum(x**2, axis=1), np.sum(pairs**2, axis=1)
        return lambda i: (x[i],), (lhs, rhs, np.full(size, -np.inf), None)

    return batch


def _symmetric_batch(rng: np.random.Generator, size: int) -> tuple[PointAt, Batch]:
    length = int(rng.integers(1, MAX_VECTOR_LENGTH + 1))
    k = int(rng.integers(1, MAX_SYMMETRIC_POWER + 1))
    squares = _vectors(rng, size, length) ** 2
    total = np.sum(squares, axis=1)
    distinct = math.factorial(k) * elementary_symmetric(squares, k)
    upper = distinct + math.comb(k, 2) * np.max(squares, axis=1) * total ** (k - 1)
    return lambda i: (np.sqrt(squares[i]), k), (total**k, upper, distinct, None)


_VECTORISED = {
    LemmaId.CHARACTERISTIC_MODULUS: _modulus_batch,
    LemmaId.PAIR_SQUARES: _pair_batch(fourth=False),
    LemmaId.PAIR_FOURTH_POWERS: _pair_batch(fourth=True),
    LemmaId.SYMMETRIC_SUM: _symmetric_batch,
}


def _quadrature_points(lemma: LemmaId, rng: np.random.Generator, size: int, m0: float) -> Iterable[tuple]:
    for _ in range(size):
        m = math.exp(rng.uniform(math.log(m0), math.log(MAX_BAND_M)))
        if lemma is LemmaId.GAUSSIAN_BAND:
            yield (m,)
        else:
            yield (m, int(rng.integers(0, MAX_MOMENT_POWER + 1)))


def _run_vectorised(lemma: LemmaId, rng: np.random.Generator, trials: int) -> LemmaSummary:
    violations, done = 0, 0
    worst_point, worst_slack = None, math.inf
    while done < trials:
        size = min(BATCH_SIZE, trials - done)
        point_at, (lhs, rhs, lower, gap) = _VECTORISED[lemma](rng, size)
        slack = np.minimum(rhs - lhs, lhs - lower)
        tolerance = SLACK_TOLERANCE * np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
        failed = slack < -tolerance
        if gap is not None:
            failed |= gap > tolerance
        violations += int(np.count_nonzero(failed))
        index = int(np.argmin(slack))
        if slack[index] < worst_slack:
            worst_slack, worst_point = float(slack[index]), point_at(index)
        done += size
    worst = check_inequality(lemma, *worst_point)
    return LemmaSummary(lemma, trials, violations, worst)


def _run_quadrature(lemma: LemmaId, rng: np.random.Generator, trials: int, m0: float) -> LemmaSummary:
    count = min(trials, QUADRATURE_TRIALS)
    if count < trials:
        logger.debug(f"{lemma}: quadrature battery limited to {count} of {trials} points")
    points = list(_quadrature_points(lemma, rng, count, m0))
    if lemma is LemmaId.GAUSSIAN_BAND:
        points.extend((m,) for m in BAND_CHECK_POINTS if m >= m0)
    cases = [check_inequality(lemma, *point, m0=m0) for point in points]
    violations = sum(not case.holds for case in cases)
    return LemmaSummary(lemma, len(cases), violations, min(cases, key=lambda case: case.slack))


def run_battery(
    lemmas: Iterable[LemmaId | str] | None = None,
    trials: int = 1_000_000,
    seed: int = 0,
    m0: float = DEFAULT_M0,
) -> list[LemmaSummary]:
    """Check every inequality at ``trials`` random domain points.

    Quadrature-based inequalities use at most ``QUADRATURE_TRIALS`` points with ``m`` log-uniform on
    ``[m0, 10**4]``; the Gaussian band also checks ``m`` in ``10, 100, 1000, 10000`` where those reach ``m0``.

    Args:
        lemmas (Iterable[LemmaId | str] | None): Which inequalities; all when omitted.
        trials (int): Points per inequality.
        seed (int): Seed of the numpy generator.
        m0 (float): Domain threshold of the Gaussian band.

    Returns
    -------
        list[LemmaSummary]: One summary per inequality with the worst case found.
    """
    chosen = list(LemmaId) if lemmas is None else [LemmaId(lemma) for lemma in lemmas]
    rng = np.random.default_rng(seed)
    summaries = []
    for lemma in chosen:
        if lemma in QUADRATURE_LEMMAS:
            summary = _run_quadrature(lemma, rng, trials, m0)
        else:
            summary = _run_vectorised(lemma, rng, trials)
        logger.info(
            f"{lemma}: {summary.trials} points, {summary.violations} violations, "
            f"worst slack {summary.worst_slack:.3e}",
        )
        summaries.append(summary)
    return summaries


def band_holds(m: float) -> bool:
    scale = math.sqrt(math.pi / m)
    return abs(gaussian_integral(m) - scale) <= 2 / m * scale


def find_m0(low: float = 10.0, high: float = MAX_BAND_M, tolerance: float = 1e-3) -> float:
    """Smallest ``m`` from which the Gaussian band holds, by bisection between a failing and a passing point.

    The band is trivially wide below ``m = 3`` and fails again up to a few dozen, so ``low`` must lie in that gap.
    The relative error of the band is dominated by the truncated Gaussian tails for small ``m`` and decays
    monotonically once it is inside the band, so one crossing is assumed.
    """
    if band_holds(low) or not band_holds(high):
        msg = f"Bisection needs a failing low end and a passing high end, got [{low}, {high}]"
        raise ValueError(msg)
    while high - low > tolerance * high:
        middle = math.sqrt(low * high) if high / low > 4 else (low + high) / 2  # noqa: PLR2004
        if band_holds(middle):
            high = middle
        else:
            low = middle
    logger.debug(f"Gaussian band threshold m0 ~ {high:.4f}")
    return high
