"""Shaped pump as a coherent superposition of radial LG_p^0 modes."""
import logging
from dataclasses import dataclass

import numpy as np

from scripts.errors import DegeneratePumpError, DomainError
from scripts.modemath import laguerre_stack
from scripts.pump_shaping.coefficients import as_complex, norm_drift, normalize_coefficients, NORM_DRIFT_TOLERANCE

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PumpConfig:
    wavelength: float
    waist: float
    coefficients: np.ndarray

    def __post_init__(self):
        if not np.isfinite(self.waist) or self.waist <= 0:
            raise DomainError(f"pump waist must be positive, got {self.waist} m")
        if not np.isfinite(self.wavelength) or self.wavelength <= 0:
            raise DomainError(f"pump wavelength must be positive, got {self.wavelength} m")
        alpha = normalize_coefficients(self.coefficients)
        alpha.setflags(write=False)
        object.__setattr__(self, "coefficients", alpha)

    @classmethod
    def from_raw(cls, wavelength: float, waist: float, raw, n_modes: int = None) -> "PumpConfig":
        """Zero-pad ``raw`` to ``n_modes``; longer lists are rejected."""
        alpha = as_complex(raw)
        if n_modes is not None:
            if n_modes < 1:
                raise DegeneratePumpError(f"mode count must be at least 1, got {n_modes}")
            if alpha.size > n_modes:
                raise DegeneratePumpError(f"{alpha.size} coefficients given for {n_modes} modes")
            alpha = np.concatenate([alpha, np.zeros(n_modes - alpha.size, dtype=complex)])
        drift = norm_drift(alpha) if alpha.size else 0.0
        if drift > NORM_DRIFT_TOLERANCE:
            logger.warning(f"Pump coefficient norm drifts {drift:.3f} from unity; renormalizing")
        return cls(wavelength=wavelength, waist=waist, coefficients=alpha)

    @classmethod
    def from_lab_units(cls, wavelength_nm: float, waist_um: float, raw, n_modes: int = None) -> "PumpConfig":
        return cls.from_raw(wavelength_nm * 1e-9, waist_um * 1e-6, raw, n_modes)

    @property
    def n_modes(self) -> int:
        return len(self.coefficients)

    def with_coefficients(self, raw) -> "PumpConfig":
        return PumpConfig.from_raw(self.wavelength, self.waist, raw, self.n_modes)


def pump_mode_basis(rho_s, rho_i, delta_phi, waist: float, n_modes: int) -> np.ndarray:
    """Real LG_p^0 pump amplitudes for p = 0 .. n_modes-1, stacked on a leading axis."""
    rho_s = np.asarray(rho_s, dtype=float)
    rho_i = np.asarray(rho_i, dtype=float)
    rho_p2 = np.maximum(rho_s ** 2 + rho_i ** 2 + 2.0 * rho_s * rho_i * np.cos(delta_phi), 0.0)
    x = 0.5 * waist ** 2 * rho_p2
    modes = laguerre_stack(n_modes - 1, 0, x)
    signs = np.where(np.arange(n_modes) % 2 == 0, 1.0, -1.0).reshape((n_modes,) + (1,) * x.ndim)
    return np.sqrt(waist ** 2 / (2.0 * np.pi)) * np.exp(-0.5 * x) * signs * modes


def pump_amplitude(rho_s, rho_i, delta_phi, pump: PumpConfig):
    """V = sum_p alpha_p LG_p^0(rho_p)."""
    basis = pump_mode_basis(rho_s, rho_i, delta_phi, pump.waist, pump.n_modes)
    value = np.tensordot(pump.coefficients, basis, axes=1)
    return complex(value) if np.ndim(value) == 0 else value


def pump_intensity_profile(pump: PumpConfig, radii) -> np.ndarray:
    """Position-space radial intensity |E(r)|^2 of the superposed pump, unit power."""
    radii = np.asarray(radii, dtype=float)
    x = 2.0 * (radii / pump.waist) ** 2
    modes = laguerre_stack(pump.n_modes - 1, 0, x)
    field = np.sqrt(2.0 / np.pi) / pump.waist * np.exp(-0.5 * x) * np.tensordot(pump.coefficients, modes, axes=1)
    return np.abs(field) ** 2
