import numpy as np
import pytest

from qrecoil.bath import DrudeSpectralDensity, build_matrix, discretize
from qrecoil.normal_modes import diagonalize
from qrecoil.units import mass_cmu

MASS7 = mass_cmu(7.0)


def drude_spectrum(gamma, omega_c, n_modes, omega_max, mass=MASS7, omega0=0.0):
    sd = DrudeSpectralDensity(gamma, omega_c, mass)
    return diagonalize(build_matrix(discretize(sd, n_modes, omega_max), omega0))


@pytest.fixture(scope="session")
def mass7():
    return MASS7


@pytest.fixture(scope="session")
def grid_10ps():
    """Acceptance grid: t in [-10, 10] ps, 4001 points, exactly mirrored."""
    pos = (10.0 / 2000) * np.arange(1, 2001)
    pos[-1] = 10.0
    return np.concatenate([-pos[::-1], [0.0], pos])


@pytest.fixture(scope="session")
def spec_wc02():
    return drude_spectrum(1.0, 0.2, 2000, 100.0)


@pytest.fixture(scope="session")
def spec_wc2():
    return drude_spectrum(1.0, 2.0, 2000, 100.0)


@pytest.fixture(scope="session")
def spec_wc50():
    return drude_spectrum(1.0, 50.0, 2000, 100.0)


@pytest.fixture(scope="session")
def spec_small():
    """Coarse spectrum (n_modes=200) for cheap tests; bias ~1e-6 vs closed form."""
    return drude_spectrum(1.0, 2.0, 200, 100.0)


@pytest.fixture(scope="session")
def ballistic_spec():
    from qrecoil.normal_modes import NormalModeSpectrum
    return NormalModeSpectrum(np.array([0.0]), np.array([1.0]), MASS7)
