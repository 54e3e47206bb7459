"""Run configuration: defaults, key=value config files, and overrides."""

import dataclasses
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class RunConfig:
    mass_amu: float = 7.0
    temperature_K: float = 150.0
    gamma_ps_inv: float = 1.0
    omega_c_ps_inv: float = 2.0
    omega0_ps_inv: float = 0.0
    dK_inv_A: float = 1.0
    n_modes: int = 2000
    omega_max_ps_inv: float = 0.0   # 0 selects the automatic 50*max(omega_c, gamma, omega0)
    t_min_ps: float = -10.0
    t_max_ps: float = 10.0
    n_t: int = 4001
    seed: int = 2024
    window: str = "none"            # none | gaussian | gaussian:<sigma_ps>
    output_dir: str = "."

    def validate(self) -> "RunConfig":
        if self.mass_amu <= 0:
            raise DomainError("mass_amu must be positive")
        if self.temperature_K <= 0:
            raise DomainError("temperature_K must be positive")
        if self.gamma_ps_inv < 0:
            raise DomainError("gamma_ps_inv must be non-negative")
        if self.omega_c_ps_inv <= 0:
            raise DomainError("omega_c_ps_inv must be positive")
        if self.omega0_ps_inv < 0:
            raise DomainError("omega0_ps_inv must be non-negative")
        if self.n_modes < 1:
            raise DomainError("n_modes must be >= 1")
        if self.omega_max_ps_inv < 0:
            raise DomainError("omega_max_ps_inv must be non-negative (0 = automatic)")
        if not (self.t_min_ps < 0.0 < self.t_max_ps):
            raise DomainError("time grid must satisfy t_min < 0 < t_max")
        if self.t_min_ps != -self.t_max_ps:
            raise DomainError("time grid must be symmetric: t_min = -t_max")
        if self.n_t < 3 or self.n_t % 2 == 0:
            raise DomainError("n_t must be odd and >= 3 so the grid includes t = 0")
        window_sigma(self)  # raises on a malformed window descriptor
        return self

    @property
    def omega_max_effective(self) -> float:
        if self.omega_max_ps_inv > 0:
            return self.omega_max_ps_inv
        return 50.0 * max(self.omega_c_ps_inv, self.gamma_ps_inv, self.omega0_ps_inv)

    def time_grid(self) -> np.ndarray:
        # mirrored construction: t[i] == -t[n-1-i] bit-exactly, 0 on the grid
        half = (self.n_t - 1) // 2
        pos = (self.t_max_ps / half) * np.arange(1, half + 1)
        pos[-1] = self.t_max_ps
        return np.concatenate([-pos[::-1], [0.0], pos])


_FIELDS = {f.name: f.type for f in dataclasses.fields(RunConfig)}


def window_sigma(cfg: RunConfig) -> float | None:
    """Gaussian apodization width in ps, or None for window = none."""
    w = cfg.window.strip().lower()
    if w == "none":
        return None
    if w == "gaussian":
        return cfg.t_max_ps / 4.0
    if w.startswith("gaussian:"):
        try:
            sigma = float(w.split(":", 1)[1])
        except ValueError as exc:
            raise DomainError(f"bad window descriptor {cfg.window!r}") from exc
        if sigma <= 0:
            raise DomainError("window sigma must be positive")
        return sigma
    raise DomainError(f"unknown window {cfg.window!r} (use none | gaussian | gaussian:<sigma_ps>)")


def _coerce(key: str, raw: str):
    kind = _FIELDS[key]
    try:
        if kind in ("int", int):
            return int(raw)
        if kind in ("float", float):
            return float(raw)
    except ValueError as exc:
        raise DomainError(f"value for {key} must be of type {kind}: got {raw!r}") from exc
    return raw


def parse_config_text(text: str) -> dict:
    """Parse flat `key = value` lines; '#' comments; unknown keys are errors."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _FIELDS:
            raise DomainError(f"line {lineno}: unknown key {key!r}")
        values[key] = _coerce(key, value)
    return values


def load_config(file_text: str | None = None, overrides: list[str] | None = None,
                output_dir: str | None = None) -> RunConfig:
    """Build a validated RunConfig from a config file body plus key=value overrides."""
    values = parse_config_text(file_text) if file_text else {}
    for item in overrides or []:
        if "=" not in item:
            raise DomainError(f"override must look like key=value, got {item!r}")
        key, _, value = item.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _FIELDS:
            raise DomainError(f"unknown key {key!r}")
        values[key] = _coerce(key, value)
    if output_dir is not None:
        values["output_dir"] = output_dir
    return RunConfig(**values).validate()
