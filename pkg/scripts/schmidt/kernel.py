import logging
from typing import Optional

import numpy as np

from scripts.crystal_optics import CrystalConfig
from scripts.errors import DegeneratePumpError
from scripts.modemath import angular_fourier
from scripts.pump_shaping import PumpConfig, normalize_coefficients, pump_mode_basis
from scripts.schmidt.engine import (DEFAULT_HALF_WINDOW, FOUR_PI_SQ, SchmidtSpectrum, accumulate_rows,
                                    check_wavelengths, row_integrand)
from scripts.schmidt.grids import GridSpec, grid_for_tier

logger = logging.getLogger(__name__)


class SpectrumKernel:
    """Per-order Hermitian matrices H_l with S_l = alpha^H H_l alpha.

    Built once for a pump waist, mode count, crystal and grid; evaluating a new coefficient
    vector afterwards costs O(D N^2) instead of a full quadrature.
    """

    def __init__(self, template: PumpConfig, crystal: CrystalConfig, half_window: int = DEFAULT_HALF_WINDOW,
                 grids: GridSpec = None, n_jobs: Optional[int] = None):
        check_wavelengths(template, crystal)
        grids = grid_for_tier("coarse", half_window) if grids is None else grids
        grids.check_window(half_window)
        self.half_window = half_window
        self.n_modes = template.n_modes
        radial = grids.radial_grid(template, crystal)
        angular = grids.angular_grid()
        self.grid_meta = grids.meta(radial.rho_max)
        measure = radial.measure
        waist = template.waist
        n_modes = self.n_modes

        def pump_field(rho_s, rho_i, phi):
            return pump_mode_basis(rho_s, rho_i, phi, waist, n_modes)

        def row(i):
            fourier = angular_fourier(row_integrand(i, radial, angular, crystal, pump_field), half_window)
            return measure[i] * np.einsum("j,pjl,qjl->lpq", measure, np.conj(fourier), fourier) / FOUR_PI_SQ

        logger.info(f"Building spectrum kernel: D={half_window}, N={n_modes}, {len(radial)} radial x "
                    f"{angular.sample_count} angular")
        self.matrices = accumulate_rows(row, len(radial), n_jobs, desc="Kernel rows")

    def raw_spectrum(self, coefficients) -> np.ndarray:
        alpha = normalize_coefficients(coefficients)
        if alpha.size > self.n_modes:
            raise DegeneratePumpError(f"{alpha.size} coefficients given for a {self.n_modes}-mode kernel")
        alpha = np.pad(alpha, (0, self.n_modes - alpha.size))
        return np.einsum("p,lpq,q->l", np.conj(alpha), self.matrices, alpha).real

    def spectrum(self, coefficients) -> SchmidtSpectrum:
        return SchmidtSpectrum.from_raw(self.raw_spectrum(coefficients), self.half_window, self.grid_meta)
