from scripts.optimization.accuracy import OptimizationResult, generation_accuracy
from scripts.optimization.pso import SwarmConfig, SwarmResult, polish_minimum, pso_minimize
from scripts.optimization.refine import RefineSchedule, coordinate_descent, refine_coefficients
from scripts.optimization.sweep import SWEEP_PARAMETERS, best_of_restarts, point_seeds, sweep

__all__ = [
    "OptimizationResult",
    "RefineSchedule",
    "SWEEP_PARAMETERS",
    "SwarmConfig",
    "SwarmResult",
    "best_of_restarts",
    "coordinate_descent",
    "generation_accuracy",
    "point_seeds",
    "polish_minimum",
    "pso_minimize",
    "refine_coefficients",
    "sweep",
]
