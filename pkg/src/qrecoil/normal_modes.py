"""Normal-mode spectrum of the coupled system + bath Hamiltonian.

Diagonalizing the mass-reduced potential V/m gives mode frequencies
Omega_k = sqrt(eigenvalue) and, from the system-coordinate row of the
orthogonal eigenvector matrix, the weights d_k^2 that every correlator
sums over.  Orthogonality guarantees sum_k d_k^2 = 1.
"""

from dataclasses import dataclass

import numpy as np

from .bath import CoupledPotentialMatrix
from .errors import ComputationError, DomainError, ModelError

#: eigenvalues below -NEGATIVE_EIG_TOL * scale are a model error; small
#: negatives are the numerical zero mode of an unconfined system
NEGATIVE_EIG_TOL = 1e-9
ORTHOGONALITY_TOL = 1e-9
RESIDUAL_TOL = 1e-8
WEIGHT_SUM_TOL = 1e-10


@dataclass(frozen=True)
class NormalModeSpectrum:
    """Mode frequencies Omega_k (ascending, ps^-1) and weights d_k^2."""

    omegas: np.ndarray
    weights: np.ndarray    # d_k^2, dimensionless
    mass: float            # c.m.u.

    def __post_init__(self):
        om = np.asarray(self.omegas, dtype=float)
        wt = np.asarray(self.weights, dtype=float)
        if om.size != wt.size or om.size == 0:
            raise DomainError("spectrum arrays must be non-empty and equal length")
        if np.any(om < 0) or np.any(np.diff(om) < 0):
            raise DomainError("mode frequencies must be non-negative and ascending")
        if np.any(wt < 0):
            raise DomainError("mode weights d_k^2 must be non-negative")
        if abs(wt.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise DomainError(f"sum of d_k^2 deviates from 1 by {abs(wt.sum()-1.0):.2e}")
        object.__setattr__(self, "omegas", om)
        object.__setattr__(self, "weights", wt)

    @property
    def n_modes(self) -> int:
        return self.omegas.size


def diagonalize(V: CoupledPotentialMatrix) -> NormalModeSpectrum:
    """Extract (Omega_k, d_k^2) from the mass-reduced potential matrix.

    The symmetric eigenproblem is solved with LAPACK; the orthogonality of the
    eigenvector matrix and the eigen-residual are verified explicitly since
    sum d_k^2 = 1 (and with it every sum rule downstream) hinges on them.
    """
    v = V.v_over_m
    try:
        lam, vecs = np.linalg.eigh(v)
    except np.linalg.LinAlgError as exc:
        raise ComputationError(f"symmetric eigensolver failed to converge: {exc}") from exc

    scale = max(abs(lam[0]), abs(lam[-1]), 1e-300)
    if lam[0] < -NEGATIVE_EIG_TOL * scale:
        raise ModelError(
            f"potential matrix is not positive semidefinite: lambda_min = {lam[0]:.3e} "
            f"(tolerance {-NEGATIVE_EIG_TOL * scale:.3e})"
        )
    lam = np.maximum(lam, 0.0)

    ortho_dev = np.abs(vecs.T @ vecs - np.eye(v.shape[0])).max()
    if ortho_dev > ORTHOGONALITY_TOL:
        raise ComputationError(f"eigenvector orthogonality deviation {ortho_dev:.2e}")
    resid = np.abs(v @ vecs - vecs * lam[None, :]).max()
    vnorm = np.abs(v).max()
    if resid > RESIDUAL_TOL * vnorm:
        raise ComputationError(f"eigen-residual {resid:.2e} exceeds {RESIDUAL_TOL * vnorm:.2e}")

    if V.omega0 > 0 and np.any(lam == 0.0):
        raise ModelError(
            f"confined system (omega0 = {V.omega0}) produced a zero mode; "
            "the potential matrix is inconsistent"
        )

    omegas = np.sqrt(lam)
    weights = vecs[0, :] ** 2
    order = np.argsort(omegas, kind="stable")
    return NormalModeSpectrum(omegas[order], weights[order], V.mass)


def classical_vacf(spec: NormalModeSpectrum, t):
    """Normalized classical VACF phi(t) = sum_k d_k^2 cos(Omega_k t).

    Evaluated on the folded grid |t| so phi(-t) == phi(t) bit-exactly.
    """
    t_arr = np.asarray(t, dtype=float)
    tpos, inverse = np.unique(np.abs(t_arr), return_inverse=True)
    vals = np.cos(np.multiply.outer(tpos, spec.omegas)) @ spec.weights
    out = vals[inverse].reshape(t_arr.shape)
    return float(out) if out.ndim == 0 else out
