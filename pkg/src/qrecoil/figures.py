"""Recoil-function and recoil-factor curve families (closed-form route).

The sweep spans omega_c << gamma to omega_c >> gamma around the fixed
zero-frequency friction, plus the gamma = 0 ballistic reference.
"""

import numpy as np

from .closed_form import ExponentialKernelModel, ballistic_recoil, recoil_closed
from .units import UNITS, UnitSystem

DEFAULT_OMEGA_C_SWEEP = (0.2, 1.0, 5.0, 50.0)


def recoil_curves(mass: float, gamma: float, times: np.ndarray,
                  sweep=DEFAULT_OMEGA_C_SWEEP):
    """(label, Y(t)) pairs: ballistic first, then one curve per omega_c."""
    curves = [("ballistic", ballistic_recoil(mass, times))]
    for omega_c in sweep:
        model = ExponentialKernelModel.create(gamma, omega_c, mass)
        curves.append((f"wc_{omega_c:g}", recoil_closed(model, times)))
    return curves


def recoil_factor_imag_curves(mass: float, gamma: float, dk: float, times: np.ndarray,
                              sweep=DEFAULT_OMEGA_C_SWEEP, units: UnitSystem = UNITS):
    """Im exp(i hbar dK^2 Y/2) for the same curve family."""
    return [(label, np.sin(0.5 * units.hbar * dk * dk * y))
            for label, y in recoil_curves(mass, gamma, times, sweep)]
