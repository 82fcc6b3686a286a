"""Projections of the two-photon field onto detection LG modes and the p = 0 postselection analysis."""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd

from scripts.crystal_optics import CrystalConfig
from scripts.errors import DegenerateSpectrumError, DomainError
from scripts.modemath import AngularGrid, RadialGrid, angular_fourier, composite_gauss_legendre, lg_radial
from scripts.pump_shaping import PumpConfig, pump_amplitude
from scripts.schmidt.engine import (DEFAULT_HALF_WINDOW, SchmidtSpectrum, accumulate_rows, check_wavelengths,
                                    row_integrand, schmidt_spectrum)
from scripts.schmidt.grids import GridSpec, detection_nodes, detection_rho_max, grid_for_tier, lift_angular

logger = logging.getLogger(__name__)

MAX_RADIAL_CUTOFF = 40
DEFAULT_P_MAX = 10


@dataclass(frozen=True, eq=False)
class JointRadialDistribution:
    p_max: int
    matrix: np.ndarray
    waist_ratio: float

    def to_frame(self) -> pd.DataFrame:
        index = pd.Index(range(self.p_max + 1), name="p_s")
        return pd.DataFrame(self.matrix, index=index, columns=[f"p_i={p}" for p in range(self.p_max + 1)])


@dataclass(frozen=True, eq=False)
class PostselectionAnalysis:
    waist_ratio: float
    true_spectrum: SchmidtSpectrum
    postselected: SchmidtSpectrum

    @property
    def fraction(self) -> float:
        """Share of the windowed emission left after keeping only p_s = p_i = 0."""
        return float(self.postselected.raw_values.sum() / self.true_spectrum.raw_values.sum())

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "l": self.true_spectrum.orders,
            "S_l_true": self.true_spectrum.values,
            "S_l_postselected": self.postselected.values,
        })


def _check_waist(w_s: float) -> None:
    if not np.isfinite(w_s) or w_s <= 0:
        raise DomainError(f"detection waist must be positive, got {w_s} m")


def _pump_field(pump: PumpConfig):
    def field(rho_s, rho_i, phi):
        return pump_amplitude(rho_s, rho_i, phi, pump)
    return field


def _detection_grids(grids: GridSpec, w_s: float, p_max: int, l_max: int):
    radial = composite_gauss_legendre(detection_nodes(grids.radial_nodes, p_max, l_max),
                                      detection_rho_max(w_s, p_max, l_max))
    return radial, AngularGrid.build(lift_angular(grids.angular_samples, l_max))


def coefficient_matrix(l: int, p_max: int, w_s: float, pump: PumpConfig, crystal: CrystalConfig,
                       grids: GridSpec = None, n_jobs: Optional[int] = None,
                       radial: RadialGrid = None) -> np.ndarray:
    """C[p_s, p_i] for l_s = l, l_i = -l and p_s, p_i <= p_max, with w_i = w_s.

    ``radial`` replaces the automatic detection grid.
    """
    check_wavelengths(pump, crystal)
    _check_waist(w_s)
    if not 0 <= p_max <= MAX_RADIAL_CUTOFF:
        raise DomainError(f"radial cutoff must lie in [0, {MAX_RADIAL_CUTOFF}], got {p_max}")
    grids = grid_for_tier("fine", abs(l)) if grids is None else grids
    # one grid per |l| regardless of p_max, so every cutoff sees the same quadrature
    detection, angular = _detection_grids(grids, w_s, MAX_RADIAL_CUTOFF, abs(l))
    radial = detection if radial is None else radial
    m = abs(l)
    projector = np.conj(np.stack([lg_radial(l, p, w_s, radial.nodes) for p in range(p_max + 1)])) * radial.measure
    field = _pump_field(pump)

    def row(i):
        fourier = angular_fourier(row_integrand(i, radial, angular, crystal, field), m)[:, l + m]
        return np.outer(projector[:, i], projector @ fourier)

    return accumulate_rows(row, len(radial), n_jobs, desc=f"Projection rows l={l}")


def mode_coefficient(l_s: int, p_s: int, l_i: int, p_i: int, w_s: float, pump: PumpConfig,
                     crystal: CrystalConfig, grids: GridSpec = None, n_jobs: Optional[int] = None,
                     radial: RadialGrid = None) -> complex:
    """Amplitude of detecting LG_{p_s}^{l_s} (signal) and LG_{p_i}^{l_i} (idler), both of waist ``w_s``."""
    if min(p_s, p_i) < 0:
        raise DomainError(f"radial indices must be non-negative, got ({p_s}, {p_i})")
    if l_i != -l_s:
        return 0j
    return complex(coefficient_matrix(l_s, max(p_s, p_i), w_s, pump, crystal, grids, n_jobs, radial)[p_s, p_i])


def joint_radial_distribution(pump: PumpConfig, crystal: CrystalConfig, w_ratio: float,
                              p_max: int = DEFAULT_P_MAX, grids: GridSpec = None,
                              n_jobs: Optional[int] = None) -> JointRadialDistribution:
    """|C^{0,p_s}_{0,p_i}|^2 normalized over p_s, p_i <= p_max."""
    if not np.isfinite(w_ratio) or w_ratio <= 0:
        raise DomainError(f"waist ratio must be positive, got {w_ratio}")
    if p_max < 1:
        raise DomainError(f"radial cutoff must be at least 1, got {p_max}")
    coefficients = coefficient_matrix(0, p_max, w_ratio * pump.waist, pump, crystal, grids, n_jobs)
    weights = np.abs(coefficients) ** 2
    total = weights.sum()
    if not np.isfinite(total) or total <= 0:
        raise DegenerateSpectrumError(f"joint radial distribution vanished for w_s/w_p={w_ratio}")
    logger.info(f"Joint radial distribution w_s/w_p={w_ratio}: (0,0) share {weights[0, 0] / total:.4f}")
    return JointRadialDistribution(p_max=p_max, matrix=weights / total, waist_ratio=float(w_ratio))


def postselected_spectrum(pump: PumpConfig, crystal: CrystalConfig, w_s: float,
                          half_window: int = DEFAULT_HALF_WINDOW, grids: GridSpec = None,
                          n_jobs: Optional[int] = None) -> SchmidtSpectrum:
    """|C^{l,0}_{-l,0}|^2 over the window, as seen by a p = 0 detector."""
    check_wavelengths(pump, crystal)
    _check_waist(w_s)
    grids = grid_for_tier("fine", half_window) if grids is None else grids
    grids.check_window(half_window)
    radial, angular = _detection_grids(grids, w_s, 0, half_window)
    magnitudes = np.stack([lg_radial(l, 0, w_s, radial.nodes) for l in range(half_window + 1)])
    modes = np.concatenate([magnitudes[:0:-1], magnitudes])
    projector = np.conj(modes) * radial.measure
    field = _pump_field(pump)

    def row(i):
        fourier = angular_fourier(row_integrand(i, radial, angular, crystal, field), half_window)
        return projector[:, i] * np.einsum("lj,jl->l", projector, fourier)

    amplitudes = accumulate_rows(row, len(radial), n_jobs, desc="Postselection rows")
    meta = grids.meta(radial.rho_max)
    meta["detection_waist"] = float(w_s)
    return SchmidtSpectrum.from_raw(np.abs(amplitudes) ** 2, half_window, meta)


def postselection_analysis(pump: PumpConfig, crystal: CrystalConfig, w_s: float,
                           half_window: int = DEFAULT_HALF_WINDOW, grids: GridSpec = None,
                           n_jobs: Optional[int] = None) -> PostselectionAnalysis:
    true_spectrum = schmidt_spectrum(pump, crystal, half_window, grids, n_jobs)
    postselected = postselected_spectrum(pump, crystal, w_s, half_window, grids, n_jobs)
    analysis = PostselectionAnalysis(w_s / pump.waist, true_spectrum, postselected)
    logger.info(f"Postselection w_s/w_p={analysis.waist_ratio:.3g}: p=0 fraction {analysis.fraction:.4e}")
    return analysis


def radial_sum_convergence(l: int, pump: PumpConfig, crystal: CrystalConfig, w_s: float, p_cutoff: int,
                           grids: GridSpec = None, n_jobs: Optional[int] = None) -> np.ndarray:
    """Partial sums of |C^{l,p_s}_{-l,p_i}|^2 over p_s, p_i <= P for P = 0 .. p_cutoff."""
    weights = np.abs(coefficient_matrix(l, p_cutoff, w_s, pump, crystal, grids, n_jobs)) ** 2
    partial = np.empty(p_cutoff + 1)
    running = weights[0, 0]
    partial[0] = running
    for p in range(1, p_cutoff + 1):
        # add the new row and column of the square, corner once
        running = running + (weights[p, :p].sum() + weights[:p, p].sum() + weights[p, p])
        partial[p] = running
    logger.info(f"Radial sum l={l}, w_s={w_s * 1e6:.1f} um: {partial[-1]:.4e} at P={p_cutoff}")
    return partial
