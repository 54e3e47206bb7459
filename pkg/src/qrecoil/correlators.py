"""Time-domain correlators from a normal-mode spectrum.

Everything is an explicit sum over modes (Omega_k, d_k^2):

    phi(t)   = sum d_k^2 cos(Omega_k t)                         (normalized VACF)
    psi(t)   = (k_B T/m) phi(t)                                 (classical VACF)
    psi_Q(t) = (k_B T/m) sum d_k^2 f_k cos(Omega_k t),          f = x coth x
    X(t)     = sum (d_k^2/m Omega_k)[cos(Omega_k t) - 1] hbar coth(x_k)
    Y(t)     = (1/m) sum d_k^2 sin(Omega_k t)/Omega_k

with x_k = beta hbar Omega_k / 2.  The scattering function assembles as
I(dK, t) = exp(dK^2 X/2) exp(i hbar dK^2 Y/2); X <= 0 keeps |I| <= 1 and the
odd mode sum makes Y (and with it the phase) exactly antisymmetric.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson

from .errors import DomainError
from .normal_modes import NormalModeSpectrum, classical_vacf
from .units import UNITS, UnitSystem, inverse_temperature, thermal_energy

#: below this (dimensionless) beta*hbar*Omega, coth switches to its series
COTH_SERIES_THRESHOLD = 1e-6
#: below this frequency (ps^-1) a mode counts as the free-particle zero mode
ZERO_MODE_OMEGA = 1e-8
#: time-grid chunk for mode sums, bounds the (chunk x n_modes) workspace
_CHUNK = 512


def _quantum_occupation_filter(x: np.ndarray) -> np.ndarray:
    """f(x) = x coth(x) with f -> 1 + x^2/3 for beta hbar Omega < 1e-6."""
    small = x < COTH_SERIES_THRESHOLD / 2.0
    safe = np.where(small, 1.0, x)
    return np.where(small, 1.0 + x * x / 3.0, safe / np.tanh(safe))


def _mode_sum(t: np.ndarray, omegas: np.ndarray, coeffs: np.ndarray, term) -> np.ndarray:
    out = np.empty(t.shape)
    for i in range(0, t.size, _CHUNK):
        out[i:i + _CHUNK] = term(t[i:i + _CHUNK, None], omegas[None, :]) @ coeffs
    return out


def _folded_mode_sum(t, omegas, coeffs, term, parity: int):
    """Mode sum evaluated on the folded grid |t| and mirrored by parity.

    Evaluating each |t| exactly once makes the even/odd symmetry of the result
    bit-exact on symmetric grids (and halves the work there).
    """
    t_arr = np.asarray(t, dtype=float)
    flat = np.atleast_1d(t_arr)
    tpos, inverse = np.unique(np.abs(flat), return_inverse=True)
    vals = _mode_sum(tpos, omegas, coeffs, term)[inverse]
    if parity < 0:
        vals = np.sign(flat) * vals
    out = vals.reshape(t_arr.shape)
    return float(out) if out.ndim == 0 else out


def x_real_exponent(spec: NormalModeSpectrum, temperature_K: float, t, units: UnitSystem = UNITS):
    """Real ISF exponent X(t) in A^2; X(0) = 0 and X <= 0 everywhere.

    The mode term is written as G_k * [cos(Omega t)-1]/Omega^2 with
    G_k = (2 k_B T/m) x_k coth(x_k), and the bracket as -2 sin^2(Omega t/2)/Omega^2
    so the zero mode goes smoothly to -k_B T t^2/m without cancellation.
    """
    beta = inverse_temperature(temperature_K, units)
    x = 0.5 * beta * units.hbar * spec.omegas
    g = (2.0 * thermal_energy(temperature_K, units) / spec.mass) * _quantum_occupation_filter(x)
    zero = spec.omegas < ZERO_MODE_OMEGA
    om_safe = np.where(zero, 1.0, spec.omegas)

    def term(tc, om):
        bracket = -2.0 * np.sin(0.5 * tc * om) ** 2 / om ** 2
        return np.where(zero[None, :], -0.5 * tc ** 2, bracket)

    return _folded_mode_sum(t, om_safe, spec.weights * g, term, parity=+1)


def y_recoil(spec: NormalModeSpectrum, t):
    """Recoil function Y(t) = (1/m) sum d_k^2 sin(Omega_k t)/Omega_k, in A^2/(meV ps).

    Exactly antisymmetric; gradient 1/m at the origin for every bath.  Zero
    modes contribute their free-particle limit d_k^2 t/m.
    """
    zero = spec.omegas < ZERO_MODE_OMEGA
    om_safe = np.where(zero, 1.0, spec.omegas)

    def term(tc, om):
        return np.where(zero[None, :], tc, np.sin(tc * om) / om)

    return _folded_mode_sum(t, om_safe, spec.weights / spec.mass, term, parity=-1)


def psi_classical(spec: NormalModeSpectrum, temperature_K: float, t, units: UnitSystem = UNITS):
    """Classical VACF psi(t) = (k_B T/m) phi(t), in A^2/ps^2."""
    return thermal_energy(temperature_K, units) / spec.mass * classical_vacf(spec, t)


def psi_quantum(spec: NormalModeSpectrum, temperature_K: float, t, units: UnitSystem = UNITS):
    """Quantum-filtered VACF psi_Q(t) in A^2/ps^2.

    The classical mode amplitudes are reweighted by x coth(x), the ratio of
    quantum to classical thermal occupation of each mode.
    """
    beta = inverse_temperature(temperature_K, units)
    x = 0.5 * beta * units.hbar * spec.omegas
    coeffs = spec.weights * _quantum_occupation_filter(x)
    return thermal_energy(temperature_K, units) / spec.mass * _folded_mode_sum(
        t, spec.omegas, coeffs, lambda tc, om: np.cos(tc * om), parity=+1)


def quantum_msd(spec: NormalModeSpectrum, temperature_K: float, t, units: UnitSystem = UNITS):
    """Symmetrized quantum mean-square displacement -X(t), in A^2."""
    return -x_real_exponent(spec, temperature_K, t, units)


def _check_uniform(times: np.ndarray) -> float:
    if times.ndim != 1 or times.size < 3:
        raise DomainError("time grid must be 1-D with at least 3 points")
    steps = np.diff(times)
    dt = steps[0]
    if dt <= 0 or not np.allclose(steps, dt, rtol=1e-9, atol=0.0):
        raise DomainError("time grid must be uniform and increasing")
    return dt


def x_via_cumulant(spec: NormalModeSpectrum, temperature_K: float, times,
                   units: UnitSystem = UNITS) -> np.ndarray:
    """X(t) from the cumulant integral -X/2 = integral_0^t (t-t') psi_Q(t') dt'.

    Composite-Simpson quadrature at the grid step; the independent cross-check
    of x_real_exponent.  The grid must be uniform and contain t = 0; negative
    times are filled by evenness.
    """
    times = np.asarray(times, dtype=float)
    dt = _check_uniform(times)
    i0 = int(np.argmin(np.abs(times)))
    if abs(times[i0]) > 1e-9 * dt:
        raise DomainError("time grid must contain t = 0")
    # evaluate on a positive grid long enough to cover |t| on both sides
    n_pos = max(times.size - 1 - i0, i0) + 1
    tpos = np.arange(n_pos) * dt
    psi_q = psi_quantum(spec, temperature_K, tpos, units)
    running = cumulative_simpson(psi_q, x=tpos, initial=0.0)
    first_moment = cumulative_simpson(tpos * psi_q, x=tpos, initial=0.0)
    x_pos = -2.0 * (tpos * running - first_moment)
    idx = np.rint(np.abs(times - times[i0]) / dt).astype(int)
    return x_pos[idx]


@dataclass(frozen=True)
class CorrelatorTable:
    """Sampled correlators on a uniform grid symmetric about t = 0."""

    times: np.ndarray          # ps
    phi: np.ndarray            # dimensionless
    psi: np.ndarray            # A^2/ps^2
    psi_q: np.ndarray          # A^2/ps^2
    x: np.ndarray              # A^2
    y: np.ndarray              # A^2/(meV ps)
    temperature_K: float
    mass: float                # c.m.u.

    def __post_init__(self):
        i0 = int(np.argmin(np.abs(self.times)))
        if abs(self.phi[i0] - 1.0) > 1e-9:
            raise DomainError(f"phi(0) = {self.phi[i0]!r} deviates from 1")
        if self.x[i0] != 0.0 or self.y[i0] != 0.0:
            raise DomainError("X(0) and Y(0) must vanish")
        if np.any(self.x > 0):
            raise DomainError("X(t) must be non-positive")


def correlator_table(spec: NormalModeSpectrum, temperature_K: float, times,
                     units: UnitSystem = UNITS) -> CorrelatorTable:
    """Evaluate phi, psi, psi_Q, X, Y on a symmetric uniform grid."""
    times = np.asarray(times, dtype=float)
    _check_uniform(times)
    if not np.allclose(times + times[::-1], 0.0, atol=1e-12):
        raise DomainError("time grid must be symmetric about 0")
    phi = classical_vacf(spec, times)
    return CorrelatorTable(
        times=times,
        phi=phi,
        psi=thermal_energy(temperature_K, units) / spec.mass * phi,
        psi_q=psi_quantum(spec, temperature_K, times, units),
        x=x_real_exponent(spec, temperature_K, times, units),
        y=y_recoil(spec, times),
        temperature_K=temperature_K,
        mass=spec.mass,
    )


@dataclass(frozen=True)
class IsfResult:
    """Complex ISF samples and the bare recoil factor on a time grid."""

    dk: float                  # A^-1
    times: np.ndarray          # ps
    isf: np.ndarray            # complex, |isf| <= 1
    recoil_factor: np.ndarray  # complex, exp(i hbar dK^2 Y / 2)

    def __post_init__(self):
        if np.any(np.abs(self.isf) > 1.0 + 1e-12):
            raise DomainError("ISF magnitude exceeds 1")


def assemble_isf(spec: NormalModeSpectrum, temperature_K: float, dk: float, times,
                 units: UnitSystem = UNITS) -> IsfResult:
    """I(dK, t) = exp(dK^2 X/2) * exp(i hbar dK^2 Y/2) on the given grid."""
    if temperature_K <= 0:
        raise DomainError(f"temperature must be positive, got {temperature_K} K")
    times = np.asarray(times, dtype=float)
    x = x_real_exponent(spec, temperature_K, times, units)
    y = y_recoil(spec, times)
    recoil = np.exp(0.5j * units.hbar * dk * dk * y)
    return IsfResult(dk=dk, times=times, isf=np.exp(0.5 * dk * dk * x) * recoil,
                     recoil_factor=recoil)
