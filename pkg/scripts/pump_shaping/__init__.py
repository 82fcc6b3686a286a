from scripts.pump_shaping.coefficients import (CoefficientRow, CoefficientTable, coefficient_row,
                                               load_coefficient_table, normalize_coefficients)
from scripts.pump_shaping.pump import PumpConfig, pump_amplitude, pump_intensity_profile, pump_mode_basis

__all__ = [
    "CoefficientRow",
    "CoefficientTable",
    "PumpConfig",
    "coefficient_row",
    "load_coefficient_table",
    "normalize_coefficients",
    "pump_amplitude",
    "pump_intensity_profile",
    "pump_mode_basis",
]
