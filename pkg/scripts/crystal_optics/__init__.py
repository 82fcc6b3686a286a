from scripts.crystal_optics.crystal import AnisotropyParams, CrystalConfig, anisotropy
from scripts.crystal_optics.dispersion import SellmeierCoefficients, SellmeierSet, refractive_indices
from scripts.crystal_optics.phase_matching import (collinear_angle, collinear_offset, delta_kz, delta_kz_discrepancy,
                                                   delta_kz_full, first_zero_radius, phase_matching,
                                                   phase_matching_ring_radius)

__all__ = [
    "AnisotropyParams",
    "CrystalConfig",
    "SellmeierCoefficients",
    "SellmeierSet",
    "anisotropy",
    "collinear_angle",
    "collinear_offset",
    "delta_kz",
    "delta_kz_discrepancy",
    "delta_kz_full",
    "first_zero_radius",
    "phase_matching",
    "phase_matching_ring_radius",
    "refractive_indices",
]
