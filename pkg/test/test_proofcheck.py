from __future__ import annotations

import math

import numpy as np
import pytest

from proofcheck.battery import band_holds, find_m0, run_battery
from proofcheck.exceptions import DomainViolationError
from proofcheck.inequalities import (
    DEFAULT_M0,
    LemmaId,
    check_inequality,
    elementary_symmetric,
    gaussian_integral,
)


def test_numbered_names_resolve() -> None:
    assert LemmaId("2.1") is LemmaId.CHARACTERISTIC_MODULUS
    assert LemmaId("2.2b") is LemmaId.PAIR_FOURTH_POWERS
    assert LemmaId("symmetric-sum") is LemmaId.SYMMETRIC_SUM
    with pytest.raises(ValueError, match="LemmaId"):
        LemmaId("2.9")


def test_modulus_at_zero_weight_is_tight() -> None:
    case = check_inequality(LemmaId.CHARACTERISTIC_MODULUS, 0.0, 1.3)
    assert case.lhs == pytest.approx(1.0)
    assert case.rhs == pytest.approx(1.0)
    assert case.slack == pytest.approx(0.0, abs=1e-15)
    assert case.holds


def test_modulus_vanishes_at_half_and_pi() -> None:
    case = check_inequality("2.1", 0.5, math.pi)
    assert case.lhs == pytest.approx(0.0, abs=1e-15)
    assert case.identity_gap < 1e-12
    assert case.holds


def test_symmetric_sum_example_is_tight_on_both_sides() -> None:
    case = check_inequality(LemmaId.SYMMETRIC_SUM, [1.0, 1.0, 1.0], 2)
    assert (case.lower, case.lhs, case.rhs) == (6.0, 9.0, 9.0)
    assert case.slack == 0.0
    assert case.holds


@pytest.mark.parametrize("vector", [[3.0, -3.0], [1.0, -1.0, 2.0, -2.0], [0.5, 0.25, -0.75]])
def test_pair_squares_tight_for_zero_sum_vectors(vector: list[float]) -> None:
    case = check_inequality(LemmaId.PAIR_SQUARES, vector)
    assert case.slack == pytest.approx(0.0, abs=1e-12)
    assert case.holds


def test_pair_squares_strict_otherwise() -> None:
    assert check_inequality(LemmaId.PAIR_SQUARES, [1.0, 1.0]).slack == pytest.approx(4.0)


def test_pair_fourth_powers() -> None:
    case = check_inequality(LemmaId.PAIR_FOURTH_POWERS, [1.0, 1.0])
    assert (case.lhs, case.rhs) == (16.0, 16.0)
    assert check_inequality(LemmaId.PAIR_FOURTH_POWERS, [1.0, -2.0, 0.5, 3.0]).holds


def test_gaussian_band_domain() -> None:
    assert check_inequality(LemmaId.GAUSSIAN_BAND, 100.0).holds
    assert check_inequality(LemmaId.GAUSSIAN_BAND, 1e4).holds
    with pytest.raises(DomainViolationError):
        check_inequality(LemmaId.GAUSSIAN_BAND, 10.0)
    assert not check_inequality(LemmaId.GAUSSIAN_BAND, 10.0, m0=1.0).holds


def test_gaussian_moment_bound() -> None:
    for k in (0, 1, 2, 4, 8):
        assert check_inequality(LemmaId.GAUSSIAN_MOMENT, 200.0, k).holds
    with pytest.raises(DomainViolationError):
        check_inequality(LemmaId.GAUSSIAN_MOMENT, 200.0, 1.5)


def test_gaussian_integral_approaches_gaussian_mass() -> None:
    m = 1e4
    assert gaussian_integral(m) == pytest.approx(math.sqrt(math.pi / m), rel=1e-3)


def test_bad_points_are_domain_violations() -> None:
    with pytest.raises(DomainViolationError):
        check_inequality(LemmaId.CHARACTERISTIC_MODULUS, 1.5, 0.0)
    with pytest.raises(DomainViolationError):
        check_inequality(LemmaId.CHARACTERISTIC_MODULUS, 0.5)
    with pytest.raises(DomainViolationError):
        check_inequality(LemmaId.PAIR_SQUARES, [1.0])
    with pytest.raises(DomainViolationError):
        check_inequality(LemmaId.SYMMETRIC_SUM, [1.0, 2.0], 0)


def test_elementary_symmetric() -> None:
    assert elementary_symmetric(np.array([1.0, 2.0, 3.0]), 2) == pytest.approx(11.0)
    batch = elementary_symmetric(np.array([[1.0, 2.0, 3.0], [1.0, 1.0, 1.0]]), 3)
    assert batch.tolist() == [6.0, 1.0]


def test_battery_passes_and_is_reproducible() -> None:
    first = run_battery(trials=20_000, seed=4)
    second = run_battery(trials=20_000, seed=4)
    assert [summary.lemma for summary in first] == list(LemmaId)
    assert all(summary.passed for summary in first)
    assert [summary.worst_slack for summary in first] == [summary.worst_slack for summary in second]


def test_battery_selection() -> None:
    (summary,) = run_battery(["2.1"], trials=1_000, seed=0)
    assert summary.lemma is LemmaId.CHARACTERISTIC_MODULUS
    assert summary.trials == 1_000


def test_band_threshold() -> None:
    m0 = find_m0()
    assert 10.0 < m0 <= DEFAULT_M0
    assert band_holds(m0)
    assert not band_holds(10.0)
    with pytest.raises(ValueError, match="Bisection"):
        find_m0(low=DEFAULT_M0)


@pytest.mark.slow
def test_full_battery() -> None:
    assert all(summary.passed and summary.violations == 0 for summary in run_battery(trials=1_000_000, seed=0))
