from scripts.schmidt.engine import DEFAULT_HALF_WINDOW, SchmidtSpectrum, schmidt_spectrum, total_emission
from scripts.schmidt.grids import GRID_TIERS, GridSpec, default_rho_max, grid_for_tier
from scripts.schmidt.kernel import SpectrumKernel
from scripts.schmidt.projections import (JointRadialDistribution, PostselectionAnalysis, coefficient_matrix,
                                         joint_radial_distribution, mode_coefficient, postselected_spectrum,
                                         postselection_analysis, radial_sum_convergence)

__all__ = [
    "DEFAULT_HALF_WINDOW",
    "GRID_TIERS",
    "GridSpec",
    "JointRadialDistribution",
    "PostselectionAnalysis",
    "SchmidtSpectrum",
    "SpectrumKernel",
    "coefficient_matrix",
    "default_rho_max",
    "grid_for_tier",
    "joint_radial_distribution",
    "mode_coefficient",
    "postselected_spectrum",
    "postselection_analysis",
    "radial_sum_convergence",
    "schmidt_spectrum",
    "total_emission",
]
