"""Shared fixtures: the two Monte Carlo runs reused across acceptance tests."""

import pytest

from catlab.experiments import DEFAULT_SEED
from catlab.verify import mc200, mc50


@pytest.fixture(scope="session")
def summary_m200():
    """R=500 run at (m=200, n=5000) with hoover/zagreb/randic/gini."""
    return mc200(DEFAULT_SEED)


@pytest.fixture(scope="session")
def summary_m50():
    """R=500 run at (m=50, n=2000) with wiener/hyper_wiener."""
    return mc50(DEFAULT_SEED)
