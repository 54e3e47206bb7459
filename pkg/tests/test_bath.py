import math

import numpy as np
import pytest
from scipy.integrate import quad

from qrecoil.bath import (
    CoupledPotentialMatrix,
    DiscretizedBath,
    DrudeSpectralDensity,
    TabulatedSpectralDensity,
    build_matrix,
    discretize,
)
from qrecoil.errors import DomainError


def test_kernel_analytic_values():
    sd = DrudeSpectralDensity(1.0, 2.0, 1.0)
    assert sd.kernel_analytic(0.0) == 2.0
    assert sd.kernel_analytic(1.0) == pytest.approx(2.0 * math.exp(-2.0), rel=1e-12)
    assert sd.kernel_analytic(1.0) == pytest.approx(0.270671, abs=1e-6)


def test_kernel_analytic_rejects_negative_time():
    sd = DrudeSpectralDensity(1.0, 2.0, 1.0)
    with pytest.raises(DomainError):
        sd.kernel_analytic(-0.5)


@pytest.mark.parametrize("omega_c", [0.5, 2.0, 50.0])
def test_kernel_time_integral_is_gamma(omega_c):
    # the zero-frequency friction is held fixed as omega_c varies
    sd = DrudeSpectralDensity(1.3, omega_c, 1.0)
    total, _ = quad(sd.kernel_analytic, 0.0, np.inf)
    assert total == pytest.approx(1.3, rel=1e-8)


@pytest.mark.parametrize("t", [0.0, 0.3, 1.0])
def test_kernel_from_density_matches_analytic(t):
    sd = DrudeSpectralDensity(1.0, 2.0, 1.0)
    assert sd.kernel_from_density(t) == pytest.approx(sd.kernel_analytic(t), abs=1e-8)


def test_kernel_from_density_zero_coupling():
    sd = TabulatedSpectralDensity(np.array([1.0, 2.0, 3.0]), np.zeros(3), 1.0)
    assert sd.kernel_from_density(0.7) == 0.0


def test_tabulated_drude_matches_analytic_kernel():
    drude = DrudeSpectralDensity(1.0, 2.0, 1.0)
    om = np.linspace(1e-4, 400.0, 40001)
    tab = TabulatedSpectralDensity(om, drude.j_over_m(om), 1.0)
    assert tab.kernel_from_density(1.0) == pytest.approx(drude.kernel_analytic(1.0), abs=2e-3)


def test_tabulated_validation():
    with pytest.raises(DomainError):
        TabulatedSpectralDensity(np.array([]), np.array([]), 1.0)
    with pytest.raises(DomainError):
        TabulatedSpectralDensity(np.array([1.0, 0.5]), np.array([1.0, 1.0]), 1.0)
    with pytest.raises(DomainError):
        TabulatedSpectralDensity(np.array([1.0, 2.0]), np.array([1.0, -1.0]), 1.0)


def test_tabulated_from_text():
    text = "# omega  J/m\n0.5 0.1\n1.0 0.2  # inline comment\n\n2.0 0.1\n"
    sd = TabulatedSpectralDensity.from_text(text, mass=2.0)
    assert sd.omegas.tolist() == [0.5, 1.0, 2.0]
    assert sd.j_over_m_values.tolist() == [0.1, 0.2, 0.1]
    with pytest.raises(DomainError):
        TabulatedSpectralDensity.from_text("0.5 0.1 9\n", mass=1.0)


def test_discretize_single_mode():
    sd = DrudeSpectralDensity(1.0, 2.0, 1.0)
    bath = discretize(sd, 1, 10.0)
    assert bath.omegas.tolist() == [5.0]
    expected = (2.0 / np.pi) * sd.j_over_m(5.0) / 5.0 * 10.0
    assert bath.couplings_sq_over_mass[0] == pytest.approx(expected, rel=1e-12)


def test_discretize_zero_friction_decouples():
    bath = discretize(DrudeSpectralDensity(0.0, 2.0, 1.0), 50, 10.0)
    assert np.all(bath.couplings_sq_over_mass == 0.0)


def test_discretize_validation():
    sd = DrudeSpectralDensity(1.0, 2.0, 1.0)
    with pytest.raises(DomainError):
        discretize(sd, 0, 10.0)
    with pytest.raises(DomainError):
        discretize(sd, 10, 0.0)


def test_truncation_warning_flag():
    sd = DrudeSpectralDensity(1.0, 2.0, 1.0)
    # tail fraction (2/pi) arctan-complement: 1.27% at omega_max = 50 omega_c
    assert discretize(sd, 100, 100.0).truncation_warning
    assert not discretize(sd, 100, 400.0).truncation_warning


def test_kernel_reconstruction_accuracy():
    # the sharp cutoff leaves an algebraic truncation tail: at t=0 it equals
    # the missing spectral mass, and it dominates once the kernel has decayed
    sd = DrudeSpectralDensity(1.0, 2.0, 1.0)
    bath = discretize(sd, 2000, 100.0)
    t_rel = np.linspace(0.1, 1.5, 29)
    exact = sd.kernel_analytic(t_rel)
    assert np.max(np.abs(bath.kernel_reconstruction(t_rel) - exact) / exact) < 2e-3
    # worst absolute error is the missing tail mass, realized at t = 0
    t_abs = np.linspace(0.0, 2.5, 51)
    err = np.abs(bath.kernel_reconstruction(t_abs) - sd.kernel_analytic(t_abs))
    tail = sd.truncated_fraction(100.0) * sd.gamma * sd.omega_c
    assert err.max() <= 1.01 * tail
    assert err[t_abs >= 0.1].max() < 2e-3 * sd.gamma * sd.omega_c


def test_kernel_reconstruction_converges_with_n():
    sd = DrudeSpectralDensity(1.0, 2.0, 1.0)
    errs = []
    for n in (250, 2000):
        bath = discretize(sd, n, 100.0)
        errs.append(abs(bath.kernel_reconstruction(1.0) - sd.kernel_analytic(1.0)))
    assert errs[1] < errs[0]


def test_build_matrix_decoupled_is_diagonal():
    bath = discretize(DrudeSpectralDensity(0.0, 2.0, 1.0), 4, 8.0)
    V = build_matrix(bath, omega0=1.0)
    expected = np.diag(np.concatenate([[1.0], bath.omegas**2]))
    assert np.array_equal(V.v_over_m, expected)


def test_build_matrix_two_by_two_eigenvalues():
    # single bath mode, m = m_alpha = 1, omega_1 = 1, coupling weight 1:
    # V/m = [[omega0^2 + 1, -1], [-1, 1]] with eigenvalues (3 +/- sqrt 5)/2
    bath = DiscretizedBath(np.array([1.0]), np.array([1.0]), mass=1.0, omega_max=2.0)
    V = build_matrix(bath, omega0=1.0)
    assert np.array_equal(V.v_over_m, np.array([[2.0, -1.0], [-1.0, 1.0]]))
    lam = np.linalg.eigvalsh(V.v_over_m)
    assert lam == pytest.approx([(3 - np.sqrt(5)) / 2, (3 + np.sqrt(5)) / 2], rel=1e-12)


def test_build_matrix_unconfined_has_zero_mode():
    bath = discretize(DrudeSpectralDensity(1.0, 2.0, 1.0), 200, 100.0)
    V = build_matrix(bath, omega0=0.0)
    lam_min = np.linalg.eigvalsh(V.v_over_m)[0]
    scale = np.abs(V.v_over_m).max()
    assert -1e-9 * scale <= lam_min <= 1e-9 * scale


def test_tabulated_bath_through_full_pipeline():
    # a tabulated Drude table must reproduce the analytic VACF end to end
    from qrecoil.closed_form import ExponentialKernelModel, vacf_closed
    from qrecoil.normal_modes import classical_vacf, diagonalize

    drude = DrudeSpectralDensity(1.0, 2.0, 1.0)
    om = np.linspace(5e-3, 100.0, 20001)
    tab = TabulatedSpectralDensity(om, drude.j_over_m(om), 1.0)
    spec = diagonalize(build_matrix(discretize(tab, 800, 100.0), 0.0))
    t = np.linspace(0.0, 5.0, 101)
    model = ExponentialKernelModel.create(1.0, 2.0, 1.0)
    assert np.abs(classical_vacf(spec, t) - vacf_closed(model, t)).max() < 2e-3


def test_build_matrix_symmetry_and_validation():
    bath = discretize(DrudeSpectralDensity(1.0, 2.0, 1.0), 10, 10.0)
    V = build_matrix(bath, omega0=0.5)
    assert np.array_equal(V.v_over_m, V.v_over_m.T)
    with pytest.raises(DomainError):
        build_matrix(bath, omega0=-1.0)
    with pytest.raises(DomainError):
        CoupledPotentialMatrix(np.array([[1.0, 2.0], [0.0, 1.0]]), omega0=0.0, mass=1.0)
