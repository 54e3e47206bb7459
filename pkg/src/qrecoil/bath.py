"""Bath coupling: spectral densities, friction kernels, and discretization.

The bath enters through the spectral density J(omega), stored here divided by
the system mass so that every quantity the dynamics needs is mass-reduced:

    J(omega)/m          [ps^-2 per ps^-1 of frequency]
    gamma(t) = (2/pi) * integral_0^inf  J(omega)/(m omega) cos(omega t) domega

gamma(t) carries ps^-2; its time integral (the zero-frequency friction) is a
rate in ps^-1.  The Drude form

    J(omega)/m = gamma * omega * omega_c^2 / (omega^2 + omega_c^2)

reproduces the exponential kernel gamma(t) = gamma * omega_c * exp(-omega_c t).
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad, trapezoid

from .errors import DomainError

#: fraction of the spectral mass integral_0^inf J/(m omega) domega that may lie
#: beyond omega_max before discretize() raises its truncation warning flag
TRUNCATION_FRACTION = 0.01


class SpectralDensity:
    """Base class: a mass-reduced spectral density J(omega)/m."""

    mass: float

    def j_over_m(self, omega):
        raise NotImplementedError

    def kernel_from_density(self, t: float) -> float:
        """Friction kernel gamma(t) by quadrature of the cosine transform."""
        raise NotImplementedError

    def truncated_fraction(self, omega_max: float) -> float:
        """Fraction of integral_0^inf J/(m omega) domega lying above omega_max."""
        raise NotImplementedError


@dataclass(frozen=True)
class DrudeSpectralDensity(SpectralDensity):
    """Drude (Lorentzian-cutoff Ohmic) bath with kernel gamma*omega_c*exp(-omega_c t)."""

    gamma: float        # ps^-1, zero-frequency friction
    omega_c: float      # ps^-1, memory cutoff rate
    mass: float         # c.m.u.

    def __post_init__(self):
        if self.omega_c <= 0:
            raise DomainError(f"omega_c must be positive, got {self.omega_c}")
        if self.gamma < 0:
            raise DomainError(f"gamma must be non-negative, got {self.gamma}")
        if self.mass <= 0:
            raise DomainError(f"mass must be positive, got {self.mass}")

    def j_over_m(self, omega):
        omega = np.asarray(omega, dtype=float)
        return self.gamma * omega * self.omega_c**2 / (omega**2 + self.omega_c**2)

    def kernel_analytic(self, t):
        """gamma(t) = gamma * omega_c * exp(-omega_c * t) for t >= 0."""
        t = np.asarray(t, dtype=float)
        if np.any(t < 0):
            raise DomainError("kernel is defined for t >= 0 (theta(t) is the caller's business)")
        out = self.gamma * self.omega_c * np.exp(-self.omega_c * t)
        return float(out) if out.ndim == 0 else out

    def kernel_from_density(self, t: float) -> float:
        if t < 0:
            raise DomainError("kernel is defined for t >= 0")

        def integrand(om):
            return self.gamma * self.omega_c**2 / (om * om + self.omega_c**2)

        if t == 0.0:
            val, _ = quad(integrand, 0.0, np.inf)
        else:
            # oscillatory tail handled by the QAWF cosine-weighted rule
            val, _ = quad(integrand, 0.0, np.inf, weight="cos", wvar=t)
        return (2.0 / np.pi) * val

    def truncated_fraction(self, omega_max: float) -> float:
        # integral of J/(m omega) = gamma*omega_c^2/(omega^2+omega_c^2) is an arctan
        return float(1.0 - (2.0 / np.pi) * np.arctan(omega_max / self.omega_c))


@dataclass(frozen=True)
class TabulatedSpectralDensity(SpectralDensity):
    """J(omega)/m sampled on a strictly increasing frequency grid."""

    omegas: np.ndarray       # ps^-1
    j_over_m_values: np.ndarray
    mass: float              # c.m.u.

    def __post_init__(self):
        om = np.asarray(self.omegas, dtype=float)
        jv = np.asarray(self.j_over_m_values, dtype=float)
        if om.size == 0:
            raise DomainError("empty tabulation")
        if om.size != jv.size:
            raise DomainError("omega and J/m columns differ in length")
        if np.any(om <= 0):
            raise DomainError("tabulated frequencies must be positive")
        if np.any(np.diff(om) <= 0):
            raise DomainError("tabulated frequencies must be strictly increasing")
        if np.any(jv < 0):
            raise DomainError("J(omega) must be non-negative")
        if self.mass <= 0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        object.__setattr__(self, "omegas", om)
        object.__setattr__(self, "j_over_m_values", jv)

    def j_over_m(self, omega):
        # linear interpolation, zero outside the tabulated support
        return np.interp(np.asarray(omega, dtype=float), self.omegas,
                         self.j_over_m_values, left=0.0, right=0.0)

    def kernel_from_density(self, t: float) -> float:
        if t < 0:
            raise DomainError("kernel is defined for t >= 0")
        integrand = self.j_over_m_values / self.omegas * np.cos(self.omegas * t)
        return (2.0 / np.pi) * float(trapezoid(integrand, self.omegas))

    def truncated_fraction(self, omega_max: float) -> float:
        weight = self.j_over_m_values / self.omegas
        total = float(trapezoid(weight, self.omegas))
        if total == 0.0:
            return 0.0
        mask = self.omegas >= omega_max
        if not np.any(mask):
            return 0.0
        tail = float(trapezoid(weight[mask], self.omegas[mask]))
        return tail / total

    @classmethod
    def from_text(cls, text: str, mass: float) -> "TabulatedSpectralDensity":
        """Parse a two-column (omega_ps_inv, J_over_m) table; '#' starts a comment."""
        om, jv = [], []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise DomainError(f"line {lineno}: expected two columns, got {len(parts)}")
            om.append(float(parts[0]))
            jv.append(float(parts[1]))
        return cls(np.array(om), np.array(jv), mass)


@dataclass(frozen=True)
class DiscretizedBath:
    """Explicit bath oscillators reproducing the friction kernel as a cosine sum.

    couplings_sq_over_mass holds c_alpha^2/(m_alpha omega_alpha^2); the kernel
    is recovered as gamma(t) = (1/m) sum_alpha couplings * cos(omega_alpha t).
    """

    omegas: np.ndarray                 # ps^-1
    couplings_sq_over_mass: np.ndarray # c.m.u. ps^-2
    mass: float                        # c.m.u.
    omega_max: float                   # ps^-1
    truncation_warning: bool = field(default=False)

    def __post_init__(self):
        om = np.asarray(self.omegas, dtype=float)
        cw = np.asarray(self.couplings_sq_over_mass, dtype=float)
        if om.size < 1:
            raise DomainError("a discretized bath needs at least one mode")
        if om.size != cw.size:
            raise DomainError("frequency and coupling arrays differ in length")
        if np.any(om <= 0):
            raise DomainError("bath mode frequencies must be positive")
        object.__setattr__(self, "omegas", om)
        object.__setattr__(self, "couplings_sq_over_mass", cw)

    @property
    def n_modes(self) -> int:
        return self.omegas.size

    def kernel_reconstruction(self, t):
        """gamma(t) rebuilt from the discrete modes (the quadrature-rule sum)."""
        t = np.asarray(t, dtype=float)
        out = np.cos(np.multiply.outer(t, self.omegas)) @ self.couplings_sq_over_mass / self.mass
        return float(out) if out.ndim == 0 else out


def discretize(sd: SpectralDensity, n_modes: int, omega_max: float) -> DiscretizedBath:
    """Midpoint discretization omega_alpha = (alpha - 1/2) * omega_max / n_modes.

    Per-mode weight c_alpha^2/m_alpha = (2/pi) J(omega_alpha) omega_alpha domega,
    so the cosine sum over modes is the midpoint rule for the kernel transform.
    """
    if n_modes < 1:
        raise DomainError(f"n_modes must be >= 1, got {n_modes}")
    if omega_max <= 0:
        raise DomainError(f"omega_max must be positive, got {omega_max}")
    domega = omega_max / n_modes
    omegas = (np.arange(n_modes) + 0.5) * domega
    couplings = (2.0 / np.pi) * sd.mass * sd.j_over_m(omegas) / omegas * domega
    warn = bool(sd.truncated_fraction(omega_max) > TRUNCATION_FRACTION)
    return DiscretizedBath(omegas, couplings, sd.mass, omega_max, truncation_warning=warn)


@dataclass(frozen=True)
class CoupledPotentialMatrix:
    """Mass-reduced potential V/m of the system + bath quadratic Hamiltonian.

    Row/column 0 is the system coordinate.  Entries carry ps^-2; the diagonal
    system entry includes the counter-term sum that completes the square, so
    the matrix is positive semidefinite (exactly zero mode when omega0 = 0).
    """

    v_over_m: np.ndarray
    omega0: float
    mass: float

    def __post_init__(self):
        v = np.asarray(self.v_over_m, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise DomainError("potential matrix must be square")
        if not np.array_equal(v, v.T):
            raise DomainError("potential matrix must be exactly symmetric")
        object.__setattr__(self, "v_over_m", v)

    @property
    def dim(self) -> int:
        return self.v_over_m.shape[0]


def build_matrix(bath: DiscretizedBath, omega0: float) -> CoupledPotentialMatrix:
    """Assemble V/m for the system oscillator coupled to the discretized bath."""
    if omega0 < 0:
        raise DomainError(f"omega0 must be non-negative, got {omega0}")
    n = bath.n_modes
    w = bath.couplings_sq_over_mass / bath.mass   # ps^-2
    v = np.zeros((n + 1, n + 1))
    v[0, 0] = omega0**2 + w.sum()
    idx = np.arange(1, n + 1)
    v[idx, idx] = bath.omegas**2
    coupling_row = -bath.omegas * np.sqrt(w)      # -c_alpha/m with m_alpha = m
    v[0, 1:] = coupling_row
    v[1:, 0] = coupling_row
    return CoupledPotentialMatrix(v, omega0=omega0, mass=bath.mass)
