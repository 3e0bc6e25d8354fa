"""Shared fixtures: the symmetric-walk-off reference geometry at a few gains."""

import numpy as np
import pytest

from tbsim import parse_config, run_simulation
from tbsim.validate import example_config


@pytest.fixture(scope="session")
def moderate_gain_result():
    """Reference run at r1 ~ 0.4 on a 50-point grid (uniform solver)."""
    return run_simulation(parse_config(example_config(n_points=50, n_photons=4.0)))


@pytest.fixture(scope="session")
def lowgain_result():
    """Reference run deep in the perturbative regime (r1 ~ 1e-3)."""
    return run_simulation(
        parse_config(example_config(n_points=60, n_photons=1.0, gamma=1e-4))
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
