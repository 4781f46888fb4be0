"""Distributional diagnostics for normalised factors and traces."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import TYPE_CHECKING

import numpy as np
from loguru import logger
from scipy import stats as scipy_stats

from stats.exceptions import InsufficientDataError

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from stats.moments import MomentAccumulator

MIN_NORMALITY_SAMPLES = 500
DEFAULT_ALPHA = 0.01


@dataclass(frozen=True)
class CoordinateDiagnostics(object):
    """Normality diagnostics of one coordinate after empirical standardisation."""

    ks_distance: float
    ks_threshold: float
    skewness: float
    skewness_se: float
    excess_kurtosis: float
    kurtosis_se: float

    @property
    def is_normal(self) -> bool:
        return self.ks_distance < self.ks_threshold


@dataclass(frozen=True)
class NormalityReport(object):
    count: int
    coordinates: tuple[CoordinateDiagnostics, ...]
    correlation: NDArray[np.float64]


@dataclass(frozen=True)
class MixedMoment(object):
    """A standardised mixed moment next to its value for independent standard normals."""

    powers: tuple[int, ...]
    empirical: float
    gaussian: float


@dataclass(frozen=True)
class EigenvalueReport(object):
    smallest: float
    standard_error: float

    @property
    def positive_definite(self) -> bool:
        return self.smallest > self.standard_error


def ks_threshold(size: int, alpha: float = DEFAULT_ALPHA) -> float:
    """Upper ``alpha`` quantile of the exact one-sample Kolmogorov distribution for ``size`` observations."""
    return float(scipy_stats.kstwo.ppf(1 - alpha, size))


def _standardize(column: NDArray[np.float64]) -> NDArray[np.float64]:
    centered = column - column.mean()
    spread = column.std(ddof=1)
    return centered / spread if spread > 0 else centered


def _leave_one_out_shape(column: NDArray[np.float64]) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Skewness and excess kurtosis of every leave-one-out subsample, from shifted power sums."""
    x = column - column.mean()
    size = len(x)
    remaining = size - 1
    sums = [np.sum(x**k) - x**k for k in range(1, 5)]
    mean = sums[0] / remaining
    m2 = sums[1] / remaining - mean**2
    m3 = sums[2] / remaining - 3 * mean * sums[1] / remaining + 2 * mean**3
    m4 = sums[3] / remaining - 4 * mean * sums[2] / remaining + 6 * mean**2 * sums[1] / remaining - 3 * mean**4
    with np.errstate(divide="ignore", invalid="ignore"):
        return m3 / m2**1.5, m4 / m2**2 - 3


def _jackknife_se(values: NDArray[np.float64]) -> float:
    size = len(values)
    return math.sqrt((size - 1) / size * float(np.sum((values - values.mean()) ** 2)))


def diagnose_column(column: NDArray[np.float64], threshold: float) -> CoordinateDiagnostics:
    """KS distance after empirical standardisation, skewness and excess kurtosis with jackknife errors."""
    standardized = _standardize(column)
    distance = float(scipy_stats.kstest(standardized, "norm").statistic)
    if column.std() == 0:
        return CoordinateDiagnostics(distance, threshold, math.nan, math.nan, math.nan, math.nan)
    skew_values, kurtosis_values = _leave_one_out_shape(column)
    return CoordinateDiagnostics(
        ks_distance=distance,
        ks_threshold=threshold,
        skewness=float(scipy_stats.skew(column)),
        skewness_se=_jackknife_se(skew_values),
        excess_kurtosis=float(scipy_stats.kurtosis(column)),
        kurtosis_se=_jackknife_se(kurtosis_values),
    )


def normality_report(acc: MomentAccumulator, alpha: float = DEFAULT_ALPHA) -> NormalityReport:
    """Per-coordinate KS distance to ``N(0, 1)``, skewness and excess kurtosis with jackknife errors, correlations.

    Args:
        acc (MomentAccumulator): Accumulator with retained samples.
        alpha (float): Level of the KS threshold.

    Returns
    -------
        NormalityReport: Diagnostics; constant coordinates get a NaN shape and a KS distance of one half.
    """
    if acc.count < MIN_NORMALITY_SAMPLES:
        msg = f"Normality diagnostics need at least {MIN_NORMALITY_SAMPLES} samples, have {acc.count}"
        raise InsufficientDataError(msg)
    data = acc.sample_array()
    threshold = ks_threshold(acc.count, alpha)
    coordinates = tuple(diagnose_column(data[:, i], threshold) for i in range(acc.dimension))
    with np.errstate(divide="ignore", invalid="ignore"):
        correlation = np.atleast_2d(np.corrcoef(data, rowvar=False))
    flagged = sum(not item.is_normal for item in coordinates)
    logger.debug(f"Normality over {acc.count} samples: {flagged} of {acc.dimension} coordinates above KS threshold")
    return NormalityReport(acc.count, coordinates, correlation)


def gaussian_moment(powers: tuple[int, ...]) -> float:
    """``E prod(Z_i ** a_i)`` for independent standard normals: a product of double factorials."""
    value = 1
    for power in powers:
        if power % 2:
            return 0.0
        value *= math.prod(range(power - 1, 0, -2))
    return float(value)


def moment_report(acc: MomentAccumulator, max_order: int | None = None) -> list[MixedMoment]:
    """Standardised mixed moments of total order ``2..max_order`` against the independent Gaussian values."""
    order = acc.degree if max_order is None else min(max_order, acc.degree)
    report = []
    for powers in product(range(order + 1), repeat=acc.dimension):
        if 2 <= sum(powers) <= order:  # noqa: PLR2004
            report.append(MixedMoment(powers, acc.standardized_moment(powers), gaussian_moment(powers)))
    return report


def min_eigenvalue_report(samples: NDArray[np.float64]) -> EigenvalueReport:
    """Smallest eigenvalue of the sample covariance with its jackknife standard error.

    Args:
        samples (NDArray[np.float64]): One row per observation.

    Returns
    -------
        EigenvalueReport: Estimate and error; positive definiteness is claimed only above one standard error.
    """
    data = np.asarray(samples, dtype=np.float64)
    size, dimension = data.shape
    if size < 3 or size <= dimension:  # noqa: PLR2004
        msg = f"Covariance eigenvalues need more than {max(dimension, 2)} samples, have {size}"
        raise InsufficientDataError(msg)
    centered = data - data.mean(axis=0)
    smallest = float(np.linalg.eigvalsh(np.cov(centered, rowvar=False)).min())
    total = centered.sum(axis=0)
    outer = centered.T @ centered
    remaining = size - 1
    loo_sum = total[None, :] - centered
    loo_outer = outer[None, :, :] - np.einsum("ni,nj->nij", centered, centered)
    loo_cov = (loo_outer - np.einsum("ni,nj->nij", loo_sum, loo_sum) / remaining) / (remaining - 1)
    loo_smallest = np.linalg.eigvalsh(loo_cov)[:, 0]
    return EigenvalueReport(smallest, _jackknife_se(loo_smallest))
