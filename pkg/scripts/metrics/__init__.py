from scripts.metrics.figures_of_merit import entanglement_of_formation, r_squared, schmidt_number, spectrum_summary
from scripts.metrics.targets import TARGET_SHAPES, TargetSpectrum, make_target

__all__ = [
    "TARGET_SHAPES",
    "TargetSpectrum",
    "entanglement_of_formation",
    "make_target",
    "r_squared",
    "schmidt_number",
    "spectrum_summary",
]
