"""Independent validation engines: Monte Carlo mode dynamics and quadrature.

These never share a code path with the mode-sum correlators they check.  The
Monte Carlo oracle samples thermal initial conditions of the decoupled modes,
evolves each mode analytically, and estimates the VACF from the ensemble; the
quadrature oracle rebuilds the recoil function by integrating a sampled VACF.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson

from .errors import DomainError
from .normal_modes import NormalModeSpectrum
from .units import UNITS, UnitSystem, thermal_energy

#: samples per Monte Carlo batch; bounds the (batch x n_modes) workspaces
_BATCH = 2048
#: modes below this frequency are treated as free coordinates when sampling
_ZERO_OMEGA = 1e-8


@dataclass(frozen=True)
class McConfig:
    """Sampling controls for the Monte Carlo VACF estimate."""

    n_samples: int
    seed: int
    temperature_K: float
    times: np.ndarray   # ps, uniform

    def __post_init__(self):
        if self.n_samples < 1:
            raise DomainError(f"n_samples must be >= 1, got {self.n_samples}")
        if self.temperature_K <= 0:
            raise DomainError(f"temperature must be positive, got {self.temperature_K} K")
        t = np.asarray(self.times, dtype=float)
        if t.ndim != 1 or t.size < 1:
            raise DomainError("time grid must be a non-empty 1-D array")
        if t.size > 1:
            steps = np.diff(t)
            if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
                raise DomainError("time grid must be uniform")
        object.__setattr__(self, "times", t)


def mc_vacf(spec: NormalModeSpectrum, cfg: McConfig):
    """Monte Carlo estimate of the normalized VACF with per-point standard error.

    Initial conditions are thermal: mode momenta q_k(0) ~ N(0, m k_B T) for
    every mode, positions y_k(0) ~ N(0, k_B T/(m Omega_k^2)) for bound modes
    only (a zero mode's position never enters the velocity).  Velocities
    evolve analytically and phi_hat = <v(t) v(0)> m/(k_B T).  The stream is
    Philox (counter-based, 64-bit), so a fixed seed reproduces byte-identical
    results.
    """
    kT = thermal_energy(cfg.temperature_K)
    m = spec.mass
    d = np.sqrt(spec.weights)
    omegas = spec.omegas
    bound = omegas >= _ZERO_OMEGA

    cos_m = np.cos(np.outer(omegas, cfg.times))
    sin_m = np.sin(np.outer(omegas, cfg.times))

    rng = np.random.Generator(np.random.Philox(cfg.seed))
    q_scale = np.sqrt(m * kT)
    y_omega_scale = np.where(bound, np.sqrt(kT / m), 0.0)  # y_k(0) * Omega_k spread

    n_t = cfg.times.size
    acc = np.zeros(n_t)
    acc_sq = np.zeros(n_t)
    done = 0
    while done < cfg.n_samples:
        batch = min(_BATCH, cfg.n_samples - done)
        q0 = q_scale * rng.standard_normal((batch, omegas.size))
        y0 = rng.standard_normal((batch, omegas.size))
        cos_coef = (q0 / m) * d
        sin_coef = -(y0 * y_omega_scale) * d
        v = cos_coef @ cos_m + sin_coef @ sin_m
        v0 = cos_coef.sum(axis=1)
        prod = v * v0[:, None] * (m / kT)
        acc += prod.sum(axis=0)
        acc_sq += (prod * prod).sum(axis=0)
        done += batch

    phi_hat = acc / cfg.n_samples
    variance = np.maximum(acc_sq / cfg.n_samples - phi_hat**2, 0.0)
    stderr = np.sqrt(variance / cfg.n_samples)
    return phi_hat, stderr


def quad_recoil(phi: np.ndarray, times: np.ndarray, mass: float,
                units: UnitSystem = UNITS) -> np.ndarray:
    """Y(t) = (1/m) integral_0^t phi by cumulative Simpson, antisymmetrized.

    The grid must be uniform and pass through t = 0; the positive-time
    integral is mirrored with odd symmetry.
    """
    if mass <= 0:
        raise DomainError(f"mass must be positive, got {mass}")
    times = np.asarray(times, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if times.shape != phi.shape or times.ndim != 1:
        raise DomainError("phi and times must be matching 1-D arrays")
    steps = np.diff(times)
    dt = steps[0]
    if dt <= 0 or not np.allclose(steps, dt, rtol=1e-9, atol=0.0):
        raise DomainError("time grid must be uniform and increasing")
    i0 = int(np.argmin(np.abs(times)))
    if abs(times[i0]) > 1e-9 * dt:
        raise DomainError("time grid must contain t = 0")

    y = np.empty_like(phi)
    fwd = cumulative_simpson(phi[i0:], x=times[i0:], initial=0.0) / mass
    y[i0:] = fwd
    if i0 > 0:
        if not np.allclose(times + times[::-1], 0.0, atol=1e-9 * dt):
            raise DomainError("a grid with negative times must be symmetric about 0")
        y[:i0] = -fwd[1:i0 + 1][::-1]
    y[i0] = 0.0
    return y
