import numpy as np
import pytest

import halfwave_lab as hw


@pytest.fixture(scope="session")
def grid64():
    return hw.make_grid(64, 64, 10.0, 10.0)


@pytest.fixture(scope="session")
def grid32():
    return hw.make_grid(32, 32, 10.0, 10.0)


@pytest.fixture(scope="session")
def gaussian64(grid64):
    """Standard scenario data: gaussian(a=0.5, sigma=1) on the 64^2 box-10 grid."""
    f = hw.sample_function(grid64, hw.Gaussian(amplitude=0.5, sigma=1.0))
    return f, hw.to_spectrum(f)


def random_field(grid, rng, band=8):
    s = hw.random_band_limited_spectrum(grid, rng, band=band)
    return hw.to_field(s), s
