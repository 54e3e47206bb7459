"""Pydantic request/response models for the HTTP service."""

from pydantic import BaseModel, ConfigDict

from .config import RunConfig


class RunParams(BaseModel):
    """Physics and grid parameters; mirrors RunConfig minus the output path."""

    model_config = ConfigDict(extra="forbid")

    mass_amu: float = 7.0
    temperature_K: float = 150.0
    gamma_ps_inv: float = 1.0
    omega_c_ps_inv: float = 2.0
    omega0_ps_inv: float = 0.0
    dK_inv_A: float = 1.0
    n_modes: int = 2000
    omega_max_ps_inv: float = 0.0
    t_min_ps: float = -10.0
    t_max_ps: float = 10.0
    n_t: int = 4001
    seed: int = 2024
    window: str = "none"

    def to_config(self) -> RunConfig:
        return RunConfig(**self.model_dump()).validate()


class HealthResponse(BaseModel):
    status: str
    version: str


class KernelResponse(BaseModel):
    t_ps: list[float]
    gamma_t_per_ps2: list[float]


class ModesResponse(BaseModel):
    omega_k_ps_inv: list[float]
    dk_sq: list[float]
    mass_cmu: float
    truncation_warning: bool


class CorrelateResponse(BaseModel):
    t_ps: list[float]
    phi: list[float]
    psi_A2ps2: list[float]
    psiQ_A2ps2: list[float]
    X_A2: list[float]
    Y_A2_per_meVps: list[float]


class IsfResponse(BaseModel):
    t_ps: list[float]
    re_isf: list[float]
    im_isf: list[float]
    re_recoil: list[float]
    im_recoil: list[float]


class DsfResponse(BaseModel):
    E_meV: list[float]
    S: list[float]
    window: str
    imag_residual: float
    balance_residual: float
    peak_energy_meV: float | None


class FigureResponse(BaseModel):
    t_ps: list[float]
    labels: list[str]
    curves: list[list[float]]


class ValidationCheck(BaseModel):
    name: str
    value: float
    threshold: float
    comparison: str
    passed: bool


class ValidateResponse(BaseModel):
    passed: bool
    parameters: dict
    checks: list[ValidationCheck]
