"""Shared fixtures: fully enumerated oracle ensembles."""

from __future__ import annotations

import pytest

from ensemble.enumerate import enumerate_regular
from graphs.graph import Graph


@pytest.fixture(scope="session")
def g52() -> list[Graph]:
    return list(enumerate_regular(5, 2))


@pytest.fixture(scope="session")
def g63() -> list[Graph]:
    return list(enumerate_regular(6, 3))


@pytest.fixture(scope="session")
def g83() -> list[Graph]:
    return list(enumerate_regular(8, 3))
