"""Crystal configuration and the anisotropy parameters of the extraordinary pump."""
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from scripts.crystal_optics.dispersion import DEFAULT_DISPERSION, SellmeierSet, refractive_indices
from scripts.errors import DomainError


@dataclass(frozen=True)
class AnisotropyParams:
    alpha: float
    beta: float
    gamma: float
    eta: float


@dataclass(frozen=True)
class CrystalConfig:
    """Type-I crystal in SI units and radians.

    ``pump_wavelength`` is the pump vacuum wavelength; with ``degenerate`` set the signal
    and idler sit at twice that wavelength.
    """
    thickness: float
    theta_p: float
    pump_wavelength: float
    sellmeier: SellmeierSet
    degenerate: bool = True

    def __post_init__(self):
        if not np.isfinite(self.thickness) or self.thickness <= 0:
            raise DomainError(f"crystal thickness must be positive, got {self.thickness} m")
        if not 0 < self.theta_p < np.pi / 2:
            raise DomainError(f"phase-matching angle must lie in (0, 90) degrees, got {np.degrees(self.theta_p)}")
        if not self.degenerate:
            raise DomainError("only degenerate down-conversion (lambda_s = lambda_i = 2 lambda_p) is supported")
        self.sellmeier.check_range(self.pump_wavelength)
        self.sellmeier.check_range(self.signal_wavelength)
        lo, hi = self.sellmeier.range_nm
        n_o, n_e = self.sellmeier.indices(np.linspace(lo, hi, 81) * 1e-9)
        if np.any(n_o <= n_e):
            raise DomainError(f"{self.sellmeier.material} is not negative uniaxial over [{lo}, {hi}] nm")

    @classmethod
    def from_lab_units(cls, thickness_mm: float, theta_p_deg: float, pump_wavelength_nm: float = 405.0,
                       dispersion: str = DEFAULT_DISPERSION) -> "CrystalConfig":
        return cls(
            thickness=thickness_mm * 1e-3,
            theta_p=np.radians(theta_p_deg),
            pump_wavelength=pump_wavelength_nm * 1e-9,
            sellmeier=SellmeierSet.load(dispersion),
        )

    @property
    def signal_wavelength(self) -> float:
        return 2.0 * self.pump_wavelength

    @property
    def k_p0(self) -> float:
        return 2.0 * np.pi / self.pump_wavelength

    @property
    def n_signal(self) -> float:
        return refractive_indices(self.signal_wavelength, self)[0]

    def with_theta(self, theta_p: float) -> "CrystalConfig":
        return replace(self, theta_p=theta_p)

    def with_thickness(self, thickness: float) -> "CrystalConfig":
        return replace(self, thickness=thickness)


def anisotropy_terms(theta_p, n_po: float, n_pe: float) -> AnisotropyParams:
    s2 = np.sin(theta_p) ** 2
    c2 = np.cos(theta_p) ** 2
    denom = n_po ** 2 * s2 + n_pe ** 2 * c2
    return AnisotropyParams(
        alpha=(n_po ** 2 - n_pe ** 2) * np.sin(theta_p) * np.cos(theta_p) / denom,
        beta=n_po * n_pe / denom,
        gamma=n_po / np.sqrt(denom),
        eta=n_po * n_pe / np.sqrt(denom),
    )


def anisotropy(config: CrystalConfig, theta_p: float = None) -> AnisotropyParams:
    """Anisotropy parameters of the pump at the configured (or given) phase-matching angle."""
    theta = config.theta_p if theta_p is None else theta_p
    if not 0 <= theta <= np.pi / 2:
        raise DomainError(f"angle must lie in [0, 90] degrees, got {np.degrees(theta)}")
    n_po, n_pe = refractive_indices(config.pump_wavelength, config)
    if theta == 0:
        # sin(0)*cos(0) is exact, but keep alpha exactly zero at the axis
        return AnisotropyParams(alpha=0.0, beta=n_po / n_pe, gamma=n_po / n_pe, eta=n_po)
    if theta == np.pi / 2:
        return AnisotropyParams(alpha=0.0, beta=n_pe / n_po, gamma=1.0, eta=n_pe)
    return anisotropy_terms(theta, n_po, n_pe)


@lru_cache(maxsize=256)
def mismatch_constants(config: CrystalConfig):
    """(collinear offset K_p0 (n_so - eta_p), transverse denominator 2 eta_p K_p0)."""
    eta = anisotropy(config).eta
    k_p0 = config.k_p0
    return k_p0 * (config.n_signal - eta), 2.0 * eta * k_p0
