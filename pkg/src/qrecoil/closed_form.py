"""Closed-form dynamics for the exponential memory kernel (unconfined particle).

For gamma(t) = theta(t) gamma omega_c exp(-omega_c t), the Laplace transform of
the generalized Langevin equation gives a biexponential normalized VACF

    phi(t) = p1 exp(s1 |t|) + p2 exp(s2 |t|),

with s1, s2 the roots of s^2 + omega_c s + gamma omega_c = 0 and
p1 = (s1 + omega_c)/(s1 - s2), p2 = (s2 + omega_c)/(s2 - s1).  Integrating
phi yields the recoil function in closed form, whose t -> +/-inf plateau
+/- 1/(m gamma) depends on gamma alone.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .units import UNITS

#: roots closer than this (relative) are treated through the confluent branch
CRITICAL_TOL = 1e-9
#: residual imaginary part allowed after projecting complex-pair sums to reals
IMAG_RESIDUAL_TOL = 1e-12


def solve_roots(gamma: float, omega_c: float):
    """Roots and weights of the kernel's Laplace polynomial.

    Returns (s1, s2, p1, p2, critical).  s1 is the slow root.  The larger
    magnitude root is computed first and the other recovered from the root
    product gamma*omega_c, which avoids cancellation when omega_c >> gamma.
    At critical damping (omega_c = 4 gamma) the p's are singular and are
    returned as None with the flag set.
    """
    if omega_c <= 0:
        raise DomainError(f"omega_c must be positive, got {omega_c}")
    if gamma < 0:
        raise DomainError(f"gamma must be non-negative, got {gamma}")

    disc = omega_c * omega_c - 4.0 * gamma * omega_c
    if disc >= 0:
        s2 = complex(-(omega_c + np.sqrt(disc)) / 2.0)       # fast root, no cancellation
        s1 = complex(0.0) if gamma == 0 else complex(gamma * omega_c) / s2
    else:
        s1 = complex(-omega_c / 2.0, np.sqrt(-disc) / 2.0)
        s2 = s1.conjugate()

    critical = abs(s1 - s2) < CRITICAL_TOL * abs(s1)
    if critical:
        return s1, s2, None, None, True
    p1 = (s1 + omega_c) / (s1 - s2)
    p2 = (s2 + omega_c) / (s2 - s1)
    return s1, s2, p1, p2, False


@dataclass(frozen=True)
class ExponentialKernelModel:
    """Exponential-kernel bath (gamma, omega_c) with derived roots and weights."""

    gamma: float      # ps^-1
    omega_c: float    # ps^-1
    mass: float       # c.m.u.
    s1: complex
    s2: complex
    p1: complex | None
    p2: complex | None
    critical: bool

    @classmethod
    def create(cls, gamma: float, omega_c: float, mass: float) -> "ExponentialKernelModel":
        if mass <= 0:
            raise DomainError(f"mass must be positive, got {mass}")
        s1, s2, p1, p2, critical = solve_roots(gamma, omega_c)
        return cls(gamma, omega_c, mass, s1, s2, p1, p2, critical)


def _project_real(values: np.ndarray) -> np.ndarray:
    resid = np.abs(values.imag).max() if values.size else 0.0
    assert resid < IMAG_RESIDUAL_TOL, f"imaginary residual {resid:.2e} after pair sum"
    return values.real


def vacf_closed(model: ExponentialKernelModel, t):
    """Normalized VACF phi(t); confluent branch (1 + (s+omega_c)|t|) e^{s|t|} at criticality."""
    ta = np.abs(np.asarray(t, dtype=float))
    if model.critical:
        s = -model.omega_c / 2.0
        out = (1.0 + (s + model.omega_c) * ta) * np.exp(s * ta)
    else:
        vals = model.p1 * np.exp(model.s1 * ta) + model.p2 * np.exp(model.s2 * ta)
        out = _project_real(np.atleast_1d(vals)).reshape(ta.shape)
    return float(out) if np.ndim(out) == 0 else out


def recoil_closed(model: ExponentialKernelModel, t):
    """Recoil function Y(t) = (1/m) integral_0^t phi, in A^2/(meV ps).

    Antisymmetric by construction; the constant term collapses to 1/gamma by
    the root identities, so Y(+/-inf) = +/- 1/(m gamma).
    """
    t_arr = np.asarray(t, dtype=float)
    if model.gamma == 0:
        out = t_arr / model.mass
        return float(out) if out.ndim == 0 else out
    ta = np.abs(t_arr)
    if model.critical:
        a = model.omega_c / 2.0
        m_y = (2.0 - (2.0 + a * ta) * np.exp(-a * ta)) / a
    else:
        vals = (model.p1 / model.s1 * np.exp(model.s1 * ta)
                + model.p2 / model.s2 * np.exp(model.s2 * ta))
        m_y = _project_real(np.atleast_1d(vals)).reshape(ta.shape) + 1.0 / model.gamma
    out = np.sign(t_arr) * m_y / model.mass
    return float(out) if out.ndim == 0 else out


def recoil_plateau(model: ExponentialKernelModel) -> float:
    """Y(+inf) = 1/(m gamma), the omega_c-independent long-time limit."""
    if model.gamma == 0:
        raise DomainError("ballistic motion has no recoil plateau")
    return 1.0 / (model.mass * model.gamma)


def vacf_time_integral(model: ExponentialKernelModel) -> float:
    """integral_0^inf phi(t) dt evaluated from the biexponential analytically."""
    if model.gamma == 0:
        raise DomainError("phi does not decay for gamma = 0; integral diverges")
    if model.critical:
        # integral of (1 + a t) e^{-a t} with a = omega_c/2 is 2/a = 1/gamma
        return 4.0 / model.omega_c
    val = -(model.p1 / model.s1 + model.p2 / model.s2)
    assert abs(val.imag) < IMAG_RESIDUAL_TOL
    return val.real


def diffusion_coefficient(model: ExponentialKernelModel, temperature_K: float,
                          units=UNITS) -> float:
    """Kubo diffusion coefficient D = k_B T Y(inf) = k_B T/(m gamma), in A^2/ps.

    Also evaluates D as (k_B T/m) integral_0^inf phi dt from the biexponential
    and asserts the two routes agree to 1e-10 relative.
    """
    if temperature_K <= 0:
        raise DomainError(f"temperature must be positive, got {temperature_K} K")
    if model.gamma == 0:
        raise DomainError("gamma = 0: ballistic motion, diffusion coefficient diverges")
    kT = units.kB * temperature_K
    d_plateau = kT * recoil_plateau(model)
    d_integral = kT / model.mass * vacf_time_integral(model)
    assert abs(d_plateau - d_integral) <= 1e-10 * abs(d_plateau), (
        f"Kubo integral {d_integral!r} disagrees with plateau route {d_plateau!r}"
    )
    return d_plateau


def ballistic_recoil(mass: float, t):
    """Recoil function of a free particle: Y(t) = t/m."""
    if mass <= 0:
        raise DomainError(f"mass must be positive, got {mass}")
    out = np.asarray(t, dtype=float) / mass
    return float(out) if out.ndim == 0 else out
