"""Acceptance criteria, one test per criterion, each printing a pass/fail line.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion lines.
Criterion 2 contains a sub-claim that is analytically false for the smallest
cutoff in the sweep: with omega_c = 0.2 the recoil envelope decays as
exp(-omega_c t/2) = e^-1 by t = 10 ps, so Y is still mid-oscillation there
(criterion 6 itself demands that oscillation).  The literal claim is kept as
a strict expected failure; the attainable part has its own passing test.
"""

import time

import numpy as np
import pytest

from qrecoil.closed_form import (
    ExponentialKernelModel,
    ballistic_recoil,
    recoil_closed,
    recoil_plateau,
    solve_roots,
    vacf_closed,
    vacf_time_integral,
)
from qrecoil.correlators import (
    IsfResult,
    assemble_isf,
    correlator_table,
    x_via_cumulant,
    y_recoil,
)
from qrecoil.dsf import detailed_balance_residual, isf_to_dsf, peak_energy, symmetry_residual
from qrecoil.normal_modes import NormalModeSpectrum, classical_vacf
from qrecoil.oracle import McConfig, mc_vacf
from qrecoil.units import HBAR_MEV_PS, thermal_energy

SWEEP = (0.2, 1.0, 5.0, 50.0)
INV_MASS7 = 1.378362  # 1/m for m = 7 amu, A^2/(meV ps^2)


def _report(num, name, ok, elapsed, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f"  [{detail}]" if detail else ""
    print(f"ACCEPTANCE {num} {name}: {status} ({elapsed:.2f} s){suffix}")


def test_criterion_1_universal_gradient(mass7):
    start = time.perf_counter()
    h = 1e-3
    slopes = [(ballistic_recoil(mass7, h) - ballistic_recoil(mass7, -h)) / (2 * h)]
    for omega_c in SWEEP:
        model = ExponentialKernelModel.create(1.0, omega_c, mass7)
        slopes.append((recoil_closed(model, h) - recoil_closed(model, -h)) / (2 * h))
    errors = [abs(s * mass7 - 1.0) for s in slopes]
    elapsed = time.perf_counter() - start
    ok = max(errors) < 1e-3 and elapsed < 1.0
    _report(1, "universal gradient at origin", ok, elapsed,
            f"max rel err {max(errors):.2e}")
    assert 1.0 / mass7 == pytest.approx(INV_MASS7, abs=1e-5)
    assert max(errors) < 1e-3
    assert elapsed < 1.0


def test_criterion_2_plateau_attainable_part(mass7):
    start = time.perf_counter()
    models = {wc: ExponentialKernelModel.create(1.0, wc, mass7) for wc in SWEEP}
    plateaus = [recoil_plateau(m) for m in models.values()]
    spread = max(plateaus) - min(plateaus)
    devs = {wc: abs(abs(recoil_closed(models[wc], 10.0)) - 1.0 / mass7) * mass7
            for wc in (1.0, 5.0, 50.0)}
    elapsed = time.perf_counter() - start
    ok = spread < 1e-6 and max(devs.values()) < 0.02 and elapsed < 1.0
    _report(2, "plateau limit (attainable part: spread + converged curves)", ok, elapsed,
            f"spread {spread:.1e}, max dev {max(devs.values()):.2e}")
    assert spread < 1e-6
    assert all(v < 0.02 for v in devs.values())
    assert elapsed < 1.0


@pytest.mark.xfail(strict=True, reason=(
    "unsatisfiable as stated: for omega_c = 0.2 the closed form gives m*Y(10 ps) = 0.4147, "
    "58.5% away from the plateau 1/gamma; the envelope decays as exp(-omega_c t/2) = e^-1 "
    "at t = 10 and criterion 6 itself requires Y to oscillate for this cutoff"))
def test_criterion_2_plateau_literal_all_curves(mass7):
    start = time.perf_counter()
    devs = {}
    for omega_c in SWEEP:
        model = ExponentialKernelModel.create(1.0, omega_c, mass7)
        devs[omega_c] = abs(abs(recoil_closed(model, 10.0)) - 1.0 / mass7) * mass7
    elapsed = time.perf_counter() - start
    ok = max(devs.values()) < 0.02
    _report(2, "plateau limit (literal: all four curves at t = 10 ps)", ok, elapsed,
            f"dev(wc=0.2) = {devs[0.2]:.3f}")
    assert ok
    assert elapsed < 1.0


def test_criterion_3_diffusion_identity(mass7):
    start = time.perf_counter()
    kT = thermal_energy(300.0)
    rel_gaps = []
    for omega_c in SWEEP:
        model = ExponentialKernelModel.create(1.0, omega_c, mass7)
        d_plateau = kT * recoil_plateau(model)
        d_kubo = kT / mass7 * vacf_time_integral(model)
        rel_gaps.append(abs(d_plateau - d_kubo) / d_plateau)
    d_300 = kT * recoil_plateau(ExponentialKernelModel.create(1.0, 2.0, mass7))
    elapsed = time.perf_counter() - start
    ok = max(rel_gaps) < 1e-10 and abs(d_300 - 35.6339) < 1e-3 and elapsed < 1.0
    _report(3, "diffusion identity k_B T Y(inf) = Kubo integral", ok, elapsed,
            f"max rel gap {max(rel_gaps):.1e}, D = {d_300:.4f} A^2/ps")
    assert max(rel_gaps) < 1e-10
    assert d_300 == pytest.approx(35.6339, abs=1e-3)       # quoted 6 s.f. value
    assert d_300 == pytest.approx(kT / (mass7 * 1.0), rel=1e-12)
    assert elapsed < 1.0


def test_criterion_4_route_equivalence(mass7, grid_10ps, spec_wc02, spec_wc2, spec_wc50):
    start = time.perf_counter()
    specs = {0.2: spec_wc02, 2.0: spec_wc2, 50.0: spec_wc50}
    worst = {"phi": 0.0, "x": 0.0, "my": 0.0}
    for omega_c, spec in specs.items():
        model = ExponentialKernelModel.create(1.0, omega_c, mass7)
        phi_dev = np.abs(classical_vacf(spec, grid_10ps) - vacf_closed(model, grid_10ps)).max()
        x_exact = correlator_table(spec, 150.0, grid_10ps).x
        x_cum = x_via_cumulant(spec, 150.0, grid_10ps)
        x_dev = np.abs(x_cum - x_exact).max() / np.abs(x_exact).max()
        my_dev = mass7 * np.abs(y_recoil(spec, grid_10ps)
                                - recoil_closed(model, grid_10ps)).max()
        worst["phi"] = max(worst["phi"], phi_dev)
        worst["x"] = max(worst["x"], x_dev)
        worst["my"] = max(worst["my"], my_dev)
    elapsed = time.perf_counter() - start
    ok = worst["phi"] < 1e-3 and worst["x"] < 1e-4 and worst["my"] < 2e-3 and elapsed < 120.0
    _report(4, "route equivalence mode-sum vs closed-form", ok, elapsed,
            f"phi {worst['phi']:.2e}, X {worst['x']:.2e}, mY {worst['my']:.2e}")
    assert worst["phi"] < 1e-3
    assert worst["x"] < 1e-4
    assert worst["my"] < 2e-3
    assert elapsed < 120.0


def test_criterion_5_monte_carlo_oracle(spec_small, mass7):
    start = time.perf_counter()
    times = np.linspace(0.0, 5.0, 251)
    cfg = McConfig(n_samples=100_000, seed=2024, temperature_K=150.0, times=times)
    phi_hat, stderr = mc_vacf(spec_small, cfg)
    model = ExponentialKernelModel.create(1.0, 2.0, mass7)
    z = np.abs(phi_hat - vacf_closed(model, times)) / stderr
    frac = float((z < 4.0).mean())
    i1 = int(np.argmin(np.abs(times - 1.0)))
    spot_dev = abs(phi_hat[i1] - 0.508340)
    elapsed = time.perf_counter() - start
    ok = frac >= 0.99 and spot_dev < 3.0 * stderr[i1] and elapsed < 120.0
    _report(5, "Monte Carlo oracle", ok, elapsed,
            f"within-4sigma {frac:.3f}, spot |dphi(1)| {spot_dev:.2e} vs 3 sigma "
            f"{3 * stderr[i1]:.2e}")
    assert frac >= 0.99
    assert spot_dev < 3.0 * stderr[i1]
    assert elapsed < 120.0


def test_criterion_6_oscillation_classification(mass7):
    start = time.perf_counter()
    t = np.linspace(1e-6, 10.0, 100001)

    def has_interior_extremum(omega_c):
        # Y' = phi/m: an interior extremum of Y is a sign change of phi
        phi = vacf_closed(ExponentialKernelModel.create(1.0, omega_c, mass7), t)
        return bool(np.any(np.sign(phi[1:]) != np.sign(phi[:-1])))

    oscillating = {wc: has_interior_extremum(wc) for wc in (0.2, 1.0, 2.0)}
    monotonic = {wc: not has_interior_extremum(wc) for wc in (5.0, 50.0)}
    elapsed = time.perf_counter() - start
    ok = all(oscillating.values()) and all(monotonic.values()) and elapsed < 1.0
    _report(6, "oscillation criterion omega_c vs 4 gamma", ok, elapsed,
            f"extrema {oscillating}, monotonic {monotonic}")
    assert all(oscillating.values())
    assert all(monotonic.values())
    assert elapsed < 1.0


def test_criterion_7_spectral_checks(spec_wc2, mass7, grid_10ps):
    start = time.perf_counter()
    ballistic = NormalModeSpectrum(np.array([0.0]), np.array([1.0]), mass7)
    recoil_energy = HBAR_MEV_PS**2 / (2.0 * mass7)
    peak = peak_energy(isf_to_dsf(assemble_isf(ballistic, 150.0, 1.0, grid_10ps)))
    peak_err = abs(peak - recoil_energy)

    quantum = assemble_isf(spec_wc2, 150.0, 1.0, grid_10ps)
    balance = detailed_balance_residual(isf_to_dsf(quantum), 150.0)

    table = correlator_table(spec_wc2, 150.0, grid_10ps)
    classical = IsfResult(dk=1.0, times=grid_10ps,
                          isf=np.exp(0.5 * table.x).astype(complex),
                          recoil_factor=np.ones_like(grid_10ps, dtype=complex))
    symmetry = symmetry_residual(isf_to_dsf(classical))
    elapsed = time.perf_counter() - start
    ok = (peak_err < 3e-3 and abs(recoil_energy - 0.2986) < 3e-4
          and balance < 5e-3 and symmetry < 1e-10 and elapsed < 10.0)
    _report(7, "spectral checks (recoil peak, detailed balance, symmetry)", ok, elapsed,
            f"peak err {peak_err:.2e} meV, balance {balance:.2e}, symmetry {symmetry:.2e}")
    assert peak_err < 3e-3
    assert balance < 5e-3
    assert symmetry < 1e-10
    assert elapsed < 10.0


def test_criterion_8_structural_invariants(spec_wc02, spec_wc2, spec_wc50, mass7, grid_10ps):
    start = time.perf_counter()
    weight_resid = max(abs(s.weights.sum() - 1.0) for s in (spec_wc02, spec_wc2, spec_wc50))

    y = y_recoil(spec_wc2, grid_10ps)
    y_antisymmetric = np.array_equal(y, -y[::-1])

    isf = assemble_isf(spec_wc2, 150.0, 1.0, grid_10ps)
    hermitian = np.array_equal(isf.isf[::-1], np.conj(isf.isf))
    bounded = bool(np.abs(isf.isf).max() <= 1.0)

    y_cold = correlator_table(spec_wc2, 10.0, grid_10ps).y
    y_hot = correlator_table(spec_wc2, 1000.0, grid_10ps).y
    t_independent = np.array_equal(y_cold, y_hot)

    root_resid = 0.0
    for omega_c in SWEEP + (2.0,):
        s1, s2, _, _, _ = solve_roots(1.0, omega_c)
        scale = max(omega_c, omega_c * omega_c)
        root_resid = max(
            root_resid,
            abs(s1 + s2 + omega_c) / omega_c,
            abs(s1 * s2 - omega_c) / scale,
            abs(s1 * s1 + omega_c * s1 + omega_c) / scale,
            abs(s2 * s2 + omega_c * s2 + omega_c) / scale,
        )
    elapsed = time.perf_counter() - start
    ok = (weight_resid < 1e-10 and y_antisymmetric and hermitian and bounded
          and t_independent and root_resid < 1e-12 and elapsed < 10.0)
    _report(8, "structural invariants", ok, elapsed,
            f"sum d^2 resid {weight_resid:.1e}, roots {root_resid:.1e}, "
            f"exact parity {y_antisymmetric and hermitian and t_independent}")
    assert weight_resid < 1e-10
    assert y_antisymmetric and hermitian and bounded and t_independent
    assert root_resid < 1e-12
    assert elapsed < 10.0


def test_criterion_9_critical_damping_continuity():
    start = time.perf_counter()
    t = np.linspace(0.0, 10.0, 2001)
    crit = ExponentialKernelModel.create(1.0, 4.0, 1.0)
    worst_phi, worst_y = 0.0, 0.0
    for eps in (1e-6, -1e-6):
        near = ExponentialKernelModel.create(1.0, 4.0 * (1.0 + eps), 1.0)
        worst_phi = max(worst_phi, np.abs(vacf_closed(crit, t) - vacf_closed(near, t)).max())
        worst_y = max(worst_y, np.abs(recoil_closed(crit, t) - recoil_closed(near, t)).max())
    elapsed = time.perf_counter() - start
    ok = worst_phi < 1e-6 and worst_y < 1e-6 and elapsed < 1.0
    _report(9, "critical damping continuity", ok, elapsed,
            f"dphi {worst_phi:.1e}, dY {worst_y:.1e}")
    assert worst_phi < 1e-6
    assert worst_y < 1e-6
    assert elapsed < 1.0
