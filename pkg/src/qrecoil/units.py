"""Internal unit system: picoseconds, Angstroms, meV.

The consistent mass unit (c.m.u.) is fixed by the energy/length/time choice:
1 c.m.u. = 1 meV ps^2 / A^2.  All computation happens in (ps, A, meV, c.m.u.);
conversions belong at the ingestion and emission boundaries only.
"""

from dataclasses import dataclass

from .errors import DomainError

# SI anchors (CODATA; k_B and the meV are exact in the 2019 SI)
_HBAR_J_S = 1.054571817e-34
_KB_J_PER_K = 1.380649e-23
_AMU_KG = 1.66053907e-27
_MEV_J = 1.602176634e-22

_CMU_KG = _MEV_J * 1e-24 / 1e-20  # 1 meV ps^2 / A^2 expressed in kg

HBAR_MEV_PS = _HBAR_J_S / (_MEV_J * 1e-12)
KB_MEV_PER_K = _KB_J_PER_K / _MEV_J
AMU_TO_CMU = _AMU_KG / _CMU_KG


@dataclass(frozen=True)
class UnitSystem:
    """Physical constants of the internal (ps, A, meV, c.m.u.) system."""

    hbar: float = HBAR_MEV_PS        # meV ps
    kB: float = KB_MEV_PER_K         # meV / K
    amu_to_cmu: float = AMU_TO_CMU   # dimensionless

    def __post_init__(self):
        if not (self.hbar > 0 and self.kB > 0 and self.amu_to_cmu > 0):
            raise DomainError("unit constants must be positive")


UNITS = UnitSystem()


def mass_cmu(mass_amu: float, units: UnitSystem = UNITS) -> float:
    """Convert a mass from atomic mass units to c.m.u."""
    if not mass_amu > 0:
        raise DomainError(f"mass must be positive, got {mass_amu} amu")
    return mass_amu * units.amu_to_cmu


def thermal_energy(temperature_K: float, units: UnitSystem = UNITS) -> float:
    """k_B T in meV."""
    if not temperature_K > 0:
        raise DomainError(f"temperature must be positive, got {temperature_K} K")
    return units.kB * temperature_K


def inverse_temperature(temperature_K: float, units: UnitSystem = UNITS) -> float:
    """beta = 1/(k_B T) in 1/meV."""
    return 1.0 / thermal_energy(temperature_K, units)
