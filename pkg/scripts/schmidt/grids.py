import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from scripts.crystal_optics import first_zero_radius
from scripts.errors import AliasingError, DomainError
from scripts.modemath import AngularGrid, composite_gauss_legendre

logger = logging.getLogger(__name__)

# (radial nodes per axis, angular samples)
GRID_TIERS = {
    "coarse": (96, 256),
    "fine": (192, 1024),
}
RHO_MAX_SAFETY = 1.5
PUMP_SUPPORT = 8.0


@dataclass(frozen=True)
class GridSpec:
    radial_nodes: int
    angular_samples: int
    rho_max: Optional[float] = None
    tier: str = "custom"

    def __post_init__(self):
        if self.radial_nodes < 1:
            raise DomainError(f"radial node count must be at least 1, got {self.radial_nodes}")
        AngularGrid(self.angular_samples)
        if self.rho_max is not None and (not np.isfinite(self.rho_max) or self.rho_max <= 0):
            raise DomainError(f"rho_max must be positive, got {self.rho_max}")

    def check_window(self, half_window: int) -> None:
        if half_window < 1:
            raise DomainError(f"half-window must be at least 1, got {half_window}")
        if self.angular_samples < 4 * half_window:
            raise AliasingError(
                f"{self.angular_samples} angular samples alias the window |l| <= {half_window}; "
                f"need at least {4 * half_window}")

    def radial_grid(self, pump, crystal):
        rho_max = self.rho_max if self.rho_max is not None else default_rho_max(pump, crystal)
        return composite_gauss_legendre(self.radial_nodes, rho_max)

    def angular_grid(self) -> AngularGrid:
        return AngularGrid.build(self.angular_samples)

    def meta(self, rho_max: float) -> dict:
        return {
            "tier": self.tier,
            "radial_nodes": int(self.radial_nodes),
            "angular_samples": int(self.angular_samples),
            "rho_max": float(rho_max),
        }


def _next_power_of_two(n: int) -> int:
    return 1 << max(1, int(np.ceil(np.log2(max(n, 2)))))


def lift_angular(samples: int, l_max: int) -> int:
    return max(samples, _next_power_of_two(4 * l_max))


def grid_for_tier(tier: str, half_window: int) -> GridSpec:
    """Tier resolution with the angular count lifted to cover |l| <= half_window."""
    if tier not in GRID_TIERS:
        raise DomainError(f"unknown grid tier '{tier}'; choose from {sorted(GRID_TIERS)}")
    radial, angular = GRID_TIERS[tier]
    needed = _next_power_of_two(4 * half_window)
    if angular < needed:
        logger.warning(f"Grid tier '{tier}': angular samples lifted {angular} -> {needed} for |l| <= {half_window}")
        angular = needed
    return GridSpec(radial_nodes=radial, angular_samples=angular, tier=tier)


def default_rho_max(pump, crystal) -> float:
    """1.5 x the larger of the pump support 8/w_p and the first phase-matching zero."""
    return RHO_MAX_SAFETY * max(PUMP_SUPPORT / pump.waist, first_zero_radius(crystal))


def detection_rho_max(waist: float, p_max: int, l_max: int) -> float:
    """Radius beyond which every LG_p^l with p <= p_max, |l| <= l_max is below e^-20."""
    return float(np.sqrt(2.0 * (4 * p_max + 2 * abs(l_max) + 42)) / waist)


def detection_nodes(radial_nodes: int, p_max: int, l_max: int) -> int:
    needed = 6 * (p_max + 1) + 2 * abs(l_max)
    return int(16 * np.ceil(max(radial_nodes, needed) / 16))
