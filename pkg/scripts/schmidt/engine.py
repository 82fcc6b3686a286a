"""OAM Schmidt spectrum by radial quadrature over the angular-difference Fourier transform."""
import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from tqdm import tqdm

from scripts.config.env_config import default_thread_count
from scripts.crystal_optics import CrystalConfig, phase_matching
from scripts.errors import DegenerateSpectrumError, DomainError
from scripts.modemath import AngularGrid, RadialGrid, angular_fourier, fourier_orders
from scripts.pump_shaping import PumpConfig, pump_amplitude
from scripts.schmidt.grids import GridSpec, grid_for_tier

logger = logging.getLogger(__name__)

DEFAULT_HALF_WINDOW = 150
FOUR_PI_SQ = 4.0 * np.pi ** 2


@dataclass(frozen=True, eq=False)
class SchmidtSpectrum:
    half_window: int
    values: np.ndarray
    raw_values: np.ndarray
    grid_meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("values", "raw_values"):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.shape != (2 * self.half_window + 1,):
                raise DomainError(f"{name} must have {2 * self.half_window + 1} entries, got {arr.shape}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_raw(cls, raw, half_window: int, grid_meta: dict = None) -> "SchmidtSpectrum":
        raw = np.asarray(raw, dtype=float)
        total = raw.sum()
        if not np.isfinite(total) or total <= 0:
            raise DegenerateSpectrumError(f"spectrum integrand vanished or diverged (window sum {total})")
        return cls(half_window, raw / total, raw, dict(grid_meta or {}))

    @property
    def orders(self) -> np.ndarray:
        return fourier_orders(self.half_window)

    def value(self, l: int) -> float:
        if abs(l) > self.half_window:
            return 0.0
        return float(self.values[l + self.half_window])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"l": self.orders, "S_l": self.values, "S_l_raw": self.raw_values})


def check_wavelengths(pump: PumpConfig, crystal: CrystalConfig) -> None:
    if not np.isclose(pump.wavelength, crystal.pump_wavelength, rtol=1e-12, atol=0.0):
        raise DomainError(
            f"pump wavelength {pump.wavelength * 1e9:.3f} nm differs from crystal "
            f"pump wavelength {crystal.pump_wavelength * 1e9:.3f} nm")


def accumulate_rows(row_fn: Callable[[int], np.ndarray], n_rows: int, n_jobs: Optional[int] = None,
                    desc: str = "Radial rows") -> np.ndarray:
    """Sum row contributions; results are gathered in row order so the reduction is reproducible."""
    n_jobs = default_thread_count() if n_jobs is None else n_jobs
    rows = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(row_fn)(i) for i in tqdm(range(n_rows), desc=desc, disable=None, leave=False))
    return np.sum(np.stack(rows), axis=0)


def row_integrand(i: int, radial: RadialGrid, angular: AngularGrid, crystal: CrystalConfig, pump_field):
    """V * Phi at rho_s = nodes[i] against every idler node, sampled over delta_phi.

    ``pump_field(rho_s, rho_i, delta_phi)`` supplies the pump factor and may add leading axes.
    """
    rho_s = radial.nodes[i]
    rho_i = radial.nodes[:, None]
    phi = angular.samples[None, :]
    return pump_field(rho_s, rho_i, phi) * phase_matching(rho_s, rho_i, phi, crystal)


def _raw_spectrum(pump: PumpConfig, crystal: CrystalConfig, half_window: int, radial: RadialGrid,
                  angular: AngularGrid, n_jobs: Optional[int] = None) -> np.ndarray:
    measure = radial.measure

    def pump_field(rho_s, rho_i, phi):
        return pump_amplitude(rho_s, rho_i, phi, pump)

    def row(i):
        fourier = angular_fourier(row_integrand(i, radial, angular, crystal, pump_field), half_window)
        return measure[i] * (measure @ np.abs(fourier) ** 2) / FOUR_PI_SQ

    return accumulate_rows(row, len(radial), n_jobs, desc="Schmidt spectrum rows")


def schmidt_spectrum(pump: PumpConfig, crystal: CrystalConfig, half_window: int = DEFAULT_HALF_WINDOW,
                     grids: GridSpec = None, n_jobs: Optional[int] = None) -> SchmidtSpectrum:
    """S_l for |l| <= half_window, normalized over the window."""
    check_wavelengths(pump, crystal)
    grids = grid_for_tier("fine", half_window) if grids is None else grids
    grids.check_window(half_window)
    radial = grids.radial_grid(pump, crystal)
    angular = grids.angular_grid()
    logger.info(f"Computing Schmidt spectrum: D={half_window}, N={pump.n_modes}, {len(radial)} radial x "
                f"{angular.sample_count} angular, rho_max={radial.rho_max:.4g} rad/m")
    raw = _raw_spectrum(pump, crystal, half_window, radial, angular, n_jobs)
    return SchmidtSpectrum.from_raw(raw, half_window, grids.meta(radial.rho_max))


def total_emission(pump: PumpConfig, crystal: CrystalConfig, grids: GridSpec = None,
                   n_jobs: Optional[int] = None) -> float:
    """Quadrature of |V Phi|^2 over both radii and both angles, on the spectrum grid."""
    check_wavelengths(pump, crystal)
    grids = grid_for_tier("fine", 1) if grids is None else grids
    radial = grids.radial_grid(pump, crystal)
    angular = grids.angular_grid()
    measure = radial.measure
    # the phi_s integral of a delta_phi function contributes a plain 2 pi
    angle_weight = 2.0 * np.pi * angular.spacing

    def pump_field(rho_s, rho_i, phi):
        return pump_amplitude(rho_s, rho_i, phi, pump)

    def row(i):
        integrand = row_integrand(i, radial, angular, crystal, pump_field)
        return measure[i] * (measure @ np.sum(np.abs(integrand) ** 2, axis=-1)) * angle_weight

    return float(accumulate_rows(row, len(radial), n_jobs, desc="Emission rows"))
