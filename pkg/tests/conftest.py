"""Shared test fixtures."""

import pytest

from rindler_purcell import CavityGeometry, RindlerGeometry


@pytest.fixture
def unit_cavity() -> CavityGeometry:
    """L = 1, m = 1: the workhorse massive configuration."""
    return CavityGeometry(1.0, 1.0)


@pytest.fixture
def massless_cavity() -> CavityGeometry:
    return CavityGeometry(1.0, 0.0)


@pytest.fixture
def moderate_rindler(unit_cavity) -> RindlerGeometry:
    """a = 1: strong acceleration, series route for every mode."""
    return RindlerGeometry(unit_cavity, 1.0)
