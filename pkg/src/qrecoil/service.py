"""FastAPI service exposing the compute pipeline.

Every endpoint is stateless: parameters in, columns out.  Spectra are cached
per parameter set since diagonalizing the default 2001 x 2001 matrix costs
about a second and the objects are immutable.
"""

from functools import lru_cache

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .bath import DrudeSpectralDensity, build_matrix, discretize
from .config import RunConfig, window_sigma
from .correlators import assemble_isf, correlator_table
from .dsf import detailed_balance_residual, isf_to_dsf, peak_energy
from .errors import BoundaryError, ComputationError, DomainError, ModelError
from .figures import recoil_curves, recoil_factor_imag_curves
from .normal_modes import diagonalize
from .schemas import (
    CorrelateResponse,
    DsfResponse,
    FigureResponse,
    HealthResponse,
    IsfResponse,
    KernelResponse,
    ModesResponse,
    RunParams,
    ValidateResponse,
)
from .units import mass_cmu
from .validation import run_validation


@lru_cache(maxsize=8)
def _spectrum(mass: float, gamma: float, omega_c: float, omega0: float,
              n_modes: int, omega_max: float):
    sd = DrudeSpectralDensity(gamma, omega_c, mass)
    bath = discretize(sd, n_modes, omega_max)
    return diagonalize(build_matrix(bath, omega0)), bath.truncation_warning


def _spectrum_for(cfg: RunConfig):
    return _spectrum(mass_cmu(cfg.mass_amu), cfg.gamma_ps_inv, cfg.omega_c_ps_inv,
                     cfg.omega0_ps_inv, cfg.n_modes, cfg.omega_max_effective)


def create_app() -> FastAPI:
    app = FastAPI(title="qrecoil", version=__version__)

    @app.exception_handler(DomainError)
    async def _domain_error(request: Request, exc: DomainError):
        return JSONResponse(status_code=422,
                            content={"detail": {"category": "usage", "message": str(exc)}})

    @app.exception_handler(ModelError)
    @app.exception_handler(ComputationError)
    @app.exception_handler(BoundaryError)
    async def _numerical_error(request: Request, exc: Exception):
        return JSONResponse(status_code=500,
                            content={"detail": {"category": "numerical", "message": str(exc)}})

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", version=__version__)

    @app.post("/kernel", response_model=KernelResponse)
    def kernel(params: RunParams):
        cfg = params.to_config()
        sd = DrudeSpectralDensity(cfg.gamma_ps_inv, cfg.omega_c_ps_inv, mass_cmu(cfg.mass_amu))
        t = cfg.time_grid()
        t = t[t >= 0.0]
        return KernelResponse(t_ps=t.tolist(), gamma_t_per_ps2=sd.kernel_analytic(t).tolist())

    @app.post("/modes", response_model=ModesResponse)
    def modes(params: RunParams):
        cfg = params.to_config()
        spec, warn = _spectrum_for(cfg)
        return ModesResponse(
            omega_k_ps_inv=spec.omegas.tolist(),
            dk_sq=spec.weights.tolist(),
            mass_cmu=spec.mass,
            truncation_warning=warn,
        )

    @app.post("/correlate", response_model=CorrelateResponse)
    def correlate(params: RunParams):
        cfg = params.to_config()
        spec, _ = _spectrum_for(cfg)
        table = correlator_table(spec, cfg.temperature_K, cfg.time_grid())
        return CorrelateResponse(
            t_ps=table.times.tolist(),
            phi=table.phi.tolist(),
            psi_A2ps2=table.psi.tolist(),
            psiQ_A2ps2=table.psi_q.tolist(),
            X_A2=table.x.tolist(),
            Y_A2_per_meVps=table.y.tolist(),
        )

    @app.post("/isf", response_model=IsfResponse)
    def isf(params: RunParams):
        cfg = params.to_config()
        spec, _ = _spectrum_for(cfg)
        result = assemble_isf(spec, cfg.temperature_K, cfg.dK_inv_A, cfg.time_grid())
        return IsfResponse(
            t_ps=result.times.tolist(),
            re_isf=result.isf.real.tolist(),
            im_isf=result.isf.imag.tolist(),
            re_recoil=result.recoil_factor.real.tolist(),
            im_recoil=result.recoil_factor.imag.tolist(),
        )

    @app.post("/dsf", response_model=DsfResponse)
    def dsf(params: RunParams):
        cfg = params.to_config()
        spec, _ = _spectrum_for(cfg)
        result = assemble_isf(spec, cfg.temperature_K, cfg.dK_inv_A, cfg.time_grid())
        spectrum = isf_to_dsf(result, gaussian_sigma=window_sigma(cfg))
        try:
            peak = peak_energy(spectrum)
        except BoundaryError:
            peak = None
        return DsfResponse(
            E_meV=spectrum.energies.tolist(),
            S=spectrum.s_values.tolist(),
            window=spectrum.window,
            imag_residual=spectrum.imag_residual,
            balance_residual=detailed_balance_residual(spectrum, cfg.temperature_K),
            peak_energy_meV=peak,
        )

    @app.post("/validate", response_model=ValidateResponse)
    def validate(params: RunParams):
        return ValidateResponse(**run_validation(params.to_config()))

    @app.post("/figure1", response_model=FigureResponse)
    def figure1(params: RunParams):
        cfg = params.to_config()
        t = cfg.time_grid()
        curves = recoil_curves(mass_cmu(cfg.mass_amu), cfg.gamma_ps_inv, t)
        return FigureResponse(
            t_ps=t.tolist(),
            labels=[label for label, _ in curves],
            curves=[np.asarray(y).tolist() for _, y in curves],
        )

    @app.post("/figure2", response_model=FigureResponse)
    def figure2(params: RunParams):
        cfg = params.to_config()
        t = cfg.time_grid()
        curves = recoil_factor_imag_curves(mass_cmu(cfg.mass_amu), cfg.gamma_ps_inv,
                                           cfg.dK_inv_A, t)
        return FigureResponse(
            t_ps=t.tolist(),
            labels=[label for label, _ in curves],
            curves=[np.asarray(y).tolist() for _, y in curves],
        )

    return app


app = create_app()
