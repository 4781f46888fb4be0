"""Goodness of fit of sampled graphs against the uniform law on an enumerated ensemble."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Self

import numpy as np
from loguru import logger
from scipy import stats as scipy_stats

from stats.exceptions import InsufficientDataError

if TYPE_CHECKING:
    from collections.abc import Hashable, Iterable, Sequence


@dataclass(frozen=True)
class UniformityResult(object):
    statistic: float
    p_value: float
    support: int
    samples: int
    unseen: int

    def passes(self: Self, significance: float = 0.01) -> bool:
        return self.p_value >= significance


def uniformity_test(observed: Sequence[int], support: int | None = None) -> UniformityResult:
    """Chi-square test of ``observed`` outcome counts against equal frequencies.

    Args:
        observed (Sequence[int]): Count per outcome; outcomes never drawn may be omitted when ``support`` is given.
        support (int | None): Number of outcomes of the law.

    Returns
    -------
        UniformityResult: Statistic, p-value and how many outcomes were never seen.
    """
    counts = list(observed)
    size = support if support is not None else len(counts)
    if len(counts) > size:
        msg = f"{len(counts)} distinct outcomes observed in a support of {size}"
        raise ValueError(msg)
    counts.extend([0] * (size - len(counts)))
    total = sum(counts)
    if size < 2 or total < 5 * size:  # noqa: PLR2004
        msg = f"Chi-square needs at least 5 expected draws per outcome: {total} draws over {size} outcomes"
        raise InsufficientDataError(msg)
    result = scipy_stats.chisquare(np.asarray(counts, dtype=np.float64))
    unseen = sum(1 for count in counts if count == 0)
    logger.debug(f"Chi-square over {size} outcomes, {total} draws: stat={result.statistic:.4f} p={result.pvalue:.4g}")
    return UniformityResult(float(result.statistic), float(result.pvalue), size, total, unseen)


def tally(outcomes: Iterable[Hashable], support: Iterable[Hashable]) -> list[int]:
    """Counts in the order of ``support``; an outcome outside the support is an error."""
    keys = list(support)
    counts = Counter(outcomes)
    stray = set(counts) - set(keys)
    if stray:
        msg = f"{len(stray)} sampled outcomes are not in the enumerated support"
        raise ValueError(msg)
    return [counts[key] for key in keys]
