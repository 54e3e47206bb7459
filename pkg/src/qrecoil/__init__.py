"""Exact quantum scattering correlators for a particle coupled to a harmonic bath.

Two independent routes to the same physics: an explicit normal-mode
discretization of the bath, and closed-form results for the exponential
memory kernel; each validates the other, with a Monte Carlo oracle and an
energy-domain transform on top.
"""

__version__ = "0.1.0"

from .bath import (
    CoupledPotentialMatrix,
    DiscretizedBath,
    DrudeSpectralDensity,
    TabulatedSpectralDensity,
    build_matrix,
    discretize,
)
from .closed_form import (
    ExponentialKernelModel,
    ballistic_recoil,
    diffusion_coefficient,
    recoil_closed,
    solve_roots,
    vacf_closed,
)
from .config import RunConfig, load_config
from .correlators import (
    CorrelatorTable,
    IsfResult,
    assemble_isf,
    correlator_table,
    psi_classical,
    psi_quantum,
    quantum_msd,
    x_real_exponent,
    x_via_cumulant,
    y_recoil,
)
from .dsf import DsfResult, detailed_balance_residual, isf_to_dsf, peak_energy
from .errors import BoundaryError, ComputationError, DomainError, ModelError
from .normal_modes import NormalModeSpectrum, classical_vacf, diagonalize
from .oracle import McConfig, mc_vacf, quad_recoil
from .units import HBAR_MEV_PS, KB_MEV_PER_K, AMU_TO_CMU, UnitSystem, mass_cmu, thermal_energy
from .validation import run_validation

__all__ = [
    "AMU_TO_CMU",
    "BoundaryError",
    "ComputationError",
    "CorrelatorTable",
    "CoupledPotentialMatrix",
    "DiscretizedBath",
    "DomainError",
    "DrudeSpectralDensity",
    "DsfResult",
    "ExponentialKernelModel",
    "HBAR_MEV_PS",
    "IsfResult",
    "KB_MEV_PER_K",
    "McConfig",
    "ModelError",
    "NormalModeSpectrum",
    "RunConfig",
    "TabulatedSpectralDensity",
    "UnitSystem",
    "assemble_isf",
    "ballistic_recoil",
    "build_matrix",
    "classical_vacf",
    "correlator_table",
    "detailed_balance_residual",
    "diagonalize",
    "diffusion_coefficient",
    "discretize",
    "isf_to_dsf",
    "load_config",
    "mass_cmu",
    "mc_vacf",
    "peak_energy",
    "psi_classical",
    "psi_quantum",
    "quad_recoil",
    "quantum_msd",
    "recoil_closed",
    "run_validation",
    "solve_roots",
    "thermal_energy",
    "vacf_closed",
    "x_real_exponent",
    "x_via_cumulant",
    "y_recoil",
]
