"""Step-wise feedback refinement: cyclic coordinate moves of shrinking size."""
import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from scripts.crystal_optics import CrystalConfig
from scripts.errors import DegeneratePumpError, DomainError
from scripts.metrics import TargetSpectrum, r_squared
from scripts.optimization.accuracy import coefficients_from_vector, mode_template, vector_from_coefficients
from scripts.pump_shaping import PumpConfig, normalize_coefficients
from scripts.schmidt import GridSpec, SpectrumKernel, grid_for_tier

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RefineSchedule:
    initial_step: float = 0.1
    min_step: float = 0.0125
    shrink: float = 0.5
    max_cycles: int = 500

    def __post_init__(self):
        if not 0 < self.min_step <= self.initial_step:
            raise DomainError(f"need 0 < min_step <= initial_step, got {self.min_step}, {self.initial_step}")
        if not 0 < self.shrink < 1:
            raise DomainError(f"shrink factor must lie in (0, 1), got {self.shrink}")


def coordinate_descent(score: Callable[[np.ndarray], float], x0, schedule: RefineSchedule = RefineSchedule()):
    """Maximize ``score`` by +/- step moves on one coordinate at a time.

    A move is kept only if it strictly improves the score. The step shrinks after a full
    cycle without improvement and the search stops once it falls below ``min_step``.
    Returns (point, score).
    """
    x = np.array(x0, dtype=float)
    best = score(x)
    step = schedule.initial_step
    cycles = 0
    while step >= schedule.min_step and cycles < schedule.max_cycles:
        cycles += 1
        improved = False
        for k in range(x.size):
            for sign in (1.0, -1.0):
                trial = x.copy()
                trial[k] += sign * step
                value = score(trial)
                if value > best:
                    x, best = trial, value
                    improved = True
                    break
        if not improved:
            step *= schedule.shrink
    return x, best


def refine_coefficients(start, target: TargetSpectrum, pump_template: PumpConfig, crystal: CrystalConfig,
                        schedule: RefineSchedule = RefineSchedule(), grids: GridSpec = None,
                        kernel: SpectrumKernel = None, n_jobs: Optional[int] = None) -> np.ndarray:
    """Refine normalized coefficients against the simulated spectrum; R^2 never drops."""
    alpha0 = normalize_coefficients(start)
    if kernel is None:
        grids = grid_for_tier("coarse", target.half_window) if grids is None else grids
        kernel = SpectrumKernel(mode_template(pump_template, alpha0.size), crystal, target.half_window, grids, n_jobs)

    def score(x):
        try:
            return r_squared(target, kernel.spectrum(coefficients_from_vector(x)))
        except DegeneratePumpError:
            return -np.inf

    x, best = coordinate_descent(score, vector_from_coefficients(alpha0), schedule)
    logger.info(f"Refinement R^2 {score(vector_from_coefficients(alpha0)):.4f}% -> {best:.4f}%")
    return normalize_coefficients(coefficients_from_vector(x))
