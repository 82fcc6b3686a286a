import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from scripts.config.env_config import default_thread_count
from scripts.crystal_optics import CrystalConfig
from scripts.errors import DegeneratePumpError
from scripts.metrics import TargetSpectrum, r_squared
from scripts.optimization.pso import SwarmConfig, polish_minimum, pso_minimize
from scripts.pump_shaping import PumpConfig, normalize_coefficients
from scripts.schmidt import GridSpec, SpectrumKernel, grid_for_tier, schmidt_spectrum

logger = logging.getLogger(__name__)

# finite stand-in for the all-zero pump, worse than any reachable -R^2
DEGENERATE_PENALTY = 1e9


def coefficients_from_vector(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    n = x.size // 2
    return x[:n] + 1j * x[n:]


def vector_from_coefficients(alpha) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=complex)
    return np.concatenate([alpha.real, alpha.imag])


def coefficient_pairs(alpha) -> list:
    return [[float(a.real), float(a.imag)] for a in np.asarray(alpha, dtype=complex)]


@dataclass(frozen=True, eq=False)
class OptimizationResult:
    coefficients: np.ndarray
    accuracy: float
    history: np.ndarray
    evaluation_count: int
    grid_tier: str
    seed: int
    search_accuracy: float
    grid_meta: dict = field(default_factory=dict)
    polish_evaluation_count: int = 0

    def to_dict(self) -> dict:
        return {
            "coefficients": coefficient_pairs(self.coefficients),
            "generation_accuracy_percent": float(self.accuracy),
            "search_accuracy_percent": float(self.search_accuracy),
            "history_r_squared_percent": [float(v) for v in self.history],
            "evaluation_count": int(self.evaluation_count),
            "polish_evaluation_count": int(self.polish_evaluation_count),
            "grid_tier": self.grid_tier,
            "seed": int(self.seed),
            "grid": dict(self.grid_meta),
        }


def mode_template(pump: PumpConfig, n_modes: int) -> PumpConfig:
    """Gaussian pump with the given wavelength and waist, padded to ``n_modes``."""
    return PumpConfig.from_raw(pump.wavelength, pump.waist, [1.0], n_modes=n_modes)


def accuracy_objective(kernel: SpectrumKernel, target: TargetSpectrum):
    """-R^2 of the kernel spectrum for a stacked (re, im) vector."""
    def objective(x):
        try:
            return -r_squared(target, kernel.spectrum(coefficients_from_vector(x)))
        except DegeneratePumpError:
            return DEGENERATE_PENALTY
    return objective


def generation_accuracy(target: TargetSpectrum, n_modes: int, pump_template: PumpConfig, crystal: CrystalConfig,
                        swarm: SwarmConfig, search_grids: GridSpec = None, report_grids: GridSpec = None,
                        kernel: SpectrumKernel = None, initial=None,
                        n_jobs: Optional[int] = None) -> OptimizationResult:
    """Maximize R^2 over N pump coefficients; G is re-evaluated on the report grid.

    The swarm searches on ``search_grids``; its best point is then polished by a bounded
    local descent (``swarm.polish_iterations``, 0 disables it). ``n_jobs`` threads both the
    quadrature rows and the particle evaluations.
    """
    n_jobs = default_thread_count() if n_jobs is None else n_jobs
    if n_modes < 1:
        raise DegeneratePumpError(f"mode count must be at least 1, got {n_modes}")
    half_window = target.half_window
    search_grids = grid_for_tier("coarse", half_window) if search_grids is None else search_grids
    report_grids = grid_for_tier("fine", half_window) if report_grids is None else report_grids
    template = mode_template(pump_template, n_modes)
    if kernel is None:
        kernel = SpectrumKernel(template, crystal, half_window, search_grids, n_jobs)

    start = None
    if initial is not None:
        alpha0 = np.pad(np.asarray(initial, dtype=complex), (0, max(0, n_modes - len(initial))))
        start = vector_from_coefficients(normalize_coefficients(alpha0))

    logger.info(f"Optimizing N={n_modes} against {target.shape} width {target.width} "
                f"({swarm.particle_count} particles x {swarm.iteration_count} iterations, seed {swarm.seed})")
    objective = accuracy_objective(kernel, target)
    result = pso_minimize(objective, 2 * n_modes, swarm, initial=start, n_jobs=n_jobs)
    polished = polish_minimum(objective, result.best_point, swarm)
    alpha = normalize_coefficients(coefficients_from_vector(polished.best_point))
    final = schmidt_spectrum(template.with_coefficients(alpha), crystal, half_window, report_grids, n_jobs)
    accuracy = r_squared(target, final)
    logger.info(f"Search R^2 {-result.best_value:.3f}% (polished {-polished.best_value:.3f}%) -> reported G {accuracy:.3f}% ({report_grids.tier} grid)")
    return OptimizationResult(
        coefficients=alpha,
        accuracy=accuracy,
        history=-result.history,
        evaluation_count=result.evaluation_count,
        grid_tier=search_grids.tier,
        seed=swarm.seed,
        search_accuracy=-polished.best_value,
        grid_meta=final.grid_meta,
        polish_evaluation_count=polished.evaluation_count,
    )
