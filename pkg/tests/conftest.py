"""Shared fixtures for the transduction-lab test suite."""
import numpy as np
import pytest


@pytest.fixture
def tol():
    """Absolute tolerance for matrix identities."""
    return 1e-10


@pytest.fixture
def rng():
    """Fresh seeded generator so tests stay order-independent."""
    return np.random.default_rng(42)
