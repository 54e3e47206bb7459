"""Energy-domain lineshape: ISF -> dynamic structure factor.

Convention: S(E = hbar omega) = (1/2pi) integral I(t) exp(-i omega t) dt,
evaluated by FFT on the uniform time grid, zero-padded to the next power of
two >= 4x the sample count.  Hermitian I(t) makes S real; the residual
imaginary part is reported.  The quantum asymmetry obeys detailed balance
S(-E) = exp(-E/k_B T) S(E).
"""

from dataclasses import dataclass

import numpy as np

from .correlators import IsfResult
from .errors import BoundaryError, DomainError
from .units import UNITS, UnitSystem, thermal_energy

#: bins below this fraction of max S are excluded from the balance residual
BALANCE_FLOOR = 1e-6


@dataclass(frozen=True)
class DsfResult:
    """DSF samples on a symmetric energy grid (arbitrary normalized units)."""

    energies: np.ndarray     # meV
    s_values: np.ndarray     # real part of the transform
    dk: float                # A^-1
    window: str              # "none" or "gaussian(sigma=... ps)"
    imag_residual: float     # max |Im| of the transform, diagnostics


def isf_to_dsf(isf: IsfResult, gaussian_sigma: float | None = None, pad: bool = True,
               units: UnitSystem = UNITS) -> DsfResult:
    """Fourier transform the ISF to the energy domain.

    gaussian_sigma, if given, applies exp(-t^2/(2 sigma^2)) apodization before
    the transform (sigma in ps).  The time grid must be uniform and symmetric
    about zero.  pad=True zero-pads to the next power of two >= 4x the sample
    count, interpolating the line shape of a decayed ISF; for non-decaying
    signals on an exactly periodic grid, pad=False keeps spectral lines as
    discrete deltas on their analytic bins.
    """
    t = np.asarray(isf.times, dtype=float)
    if t.ndim != 1 or t.size < 3:
        raise DomainError("ISF grid must be 1-D with at least 3 points")
    steps = np.diff(t)
    dt = steps[0]
    if dt <= 0 or not np.allclose(steps, dt, rtol=1e-9, atol=0.0):
        raise DomainError("ISF time grid must be uniform")
    if not np.allclose(t + t[::-1], 0.0, atol=1e-9 * dt):
        raise DomainError("ISF time grid must be symmetric about 0")

    signal = np.asarray(isf.isf, dtype=complex)
    if gaussian_sigma is not None:
        if gaussian_sigma <= 0:
            raise DomainError(f"window sigma must be positive, got {gaussian_sigma}")
        signal = signal * np.exp(-0.5 * (t / gaussian_sigma) ** 2)
        window = f"gaussian(sigma={gaussian_sigma:g} ps)"
    else:
        window = "none"

    nfft = (1 << int(np.ceil(np.log2(4 * t.size)))) if pad else t.size
    omega = 2.0 * np.pi * np.fft.fftfreq(nfft, dt)
    spectrum = (dt / (2.0 * np.pi)) * np.exp(-1j * omega * t[0]) * np.fft.fft(signal, nfft)
    energies = np.fft.fftshift(units.hbar * omega)
    spectrum = np.fft.fftshift(spectrum)
    if nfft % 2 == 0:
        # drop the unpaired -Nyquist bin so the energy grid is symmetric
        energies, spectrum = energies[1:], spectrum[1:]
    return DsfResult(
        energies=energies,
        s_values=spectrum.real,
        dk=isf.dk,
        window=window,
        imag_residual=float(np.abs(spectrum.imag).max()),
    )


def _balance_pairs(dsf: DsfResult):
    """Indices of (+E, -E) bin pairs on the symmetric energy grid."""
    i0 = int(np.argmin(np.abs(dsf.energies)))
    pos = np.arange(i0 + 1, dsf.energies.size)
    neg = i0 - (pos - i0)
    keep = neg >= 0
    return pos[keep], neg[keep]


def detailed_balance_residual(dsf: DsfResult, temperature_K: float,
                              units: UnitSystem = UNITS) -> float:
    """max over E > 0 of |S(-E) - exp(-E/k_B T) S(E)| / max S.

    Bin pairs where both sides are below BALANCE_FLOOR * max S carry no
    lineshape information and are excluded.
    """
    kT = thermal_energy(temperature_K, units)
    pos, neg = _balance_pairs(dsf)
    s = dsf.s_values
    s_max = s.max()
    mask = np.maximum(np.abs(s[pos]), np.abs(s[neg])) >= BALANCE_FLOOR * s_max
    resid = np.abs(s[neg] - np.exp(-dsf.energies[pos] / kT) * s[pos]) / s_max
    return float(resid[mask].max()) if np.any(mask) else 0.0


def symmetry_residual(dsf: DsfResult) -> float:
    """max |S(-E) - S(E)| / max S; vanishes for a real (classical) ISF."""
    pos, neg = _balance_pairs(dsf)
    s = dsf.s_values
    return float(np.abs(s[neg] - s[pos]).max() / s.max())


def peak_energy(dsf: DsfResult) -> float:
    """Peak position in meV by parabolic interpolation through the maximum bin."""
    if dsf.energies.size < 3:
        raise DomainError("need at least 3 energy bins")
    j = int(np.argmax(dsf.s_values))
    if j == 0 or j == dsf.energies.size - 1:
        raise BoundaryError("spectral maximum sits on the grid boundary")
    s_m, s_0, s_p = dsf.s_values[j - 1], dsf.s_values[j], dsf.s_values[j + 1]
    denom = s_m - 2.0 * s_0 + s_p
    h = dsf.energies[1] - dsf.energies[0]
    if denom == 0.0:
        return float(dsf.energies[j])
    return float(dsf.energies[j] + 0.5 * h * (s_m - s_p) / denom)
