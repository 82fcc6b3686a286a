"""YAML run configuration: schema, unit conversion and error context."""
import logging
import os
from typing import List, Literal, Optional, Tuple

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from scripts.crystal_optics import CrystalConfig
from scripts.errors import ConfigError
from scripts.metrics import TargetSpectrum, make_target
from scripts.optimization import RefineSchedule, SwarmConfig
from scripts.pump_shaping import PumpConfig, coefficient_row
from scripts.schmidt import GridSpec, grid_for_tier
from scripts.schmidt.engine import DEFAULT_HALF_WINDOW

logger = logging.getLogger(__name__)

GridTier = Literal["coarse", "fine"]


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class CrystalSection(_Section):
    thickness_mm: float = Field(10.0, gt=0)
    theta_p_deg: float = Field(28.71, gt=0, lt=90)
    dispersion: str = "bbo_eimerl"


class PumpSection(_Section):
    wavelength_nm: float = Field(405.0, gt=0)
    waist_um: float = Field(320.0, gt=0)
    n_modes: Optional[int] = Field(None, ge=1)
    coefficients: Optional[List[Tuple[float, float]]] = None
    coefficients_table: Optional[str] = None
    coefficients_row: Optional[str] = None

    @model_validator(mode="after")
    def _one_source(self):
        by_table = self.coefficients_table is not None or self.coefficients_row is not None
        if by_table and self.coefficients is not None:
            raise ValueError("give either inline coefficients or coefficients_table/coefficients_row, not both")
        if by_table and (self.coefficients_table is None or self.coefficients_row is None):
            raise ValueError("coefficients_table and coefficients_row must be given together")
        return self


class TargetSection(_Section):
    shape: Literal["gaussian", "triangular", "rectangular"]
    width: int = Field(gt=0)
    half_window: int = Field(DEFAULT_HALF_WINDOW, ge=1)


class SwarmSection(_Section):
    particles: int = Field(40, ge=2)
    iterations: int = Field(150, ge=0)
    inertia: float = 0.729
    cognitive: float = 1.49445
    social: float = 1.49445
    bounds: Tuple[float, float] = (-1.0, 1.0)
    seed: int = 20240501
    restarts: int = Field(1, ge=1)
    polish_iterations: int = Field(200, ge=0)


class GridsSection(_Section):
    tier: GridTier = "fine"
    search_tier: GridTier = "coarse"
    radial_nodes: Optional[int] = Field(None, ge=1)
    angular_samples: Optional[int] = Field(None, ge=2)
    rho_max_per_m: Optional[float] = Field(None, gt=0)

    @model_validator(mode="after")
    def _explicit_pair(self):
        if (self.radial_nodes is None) != (self.angular_samples is None):
            raise ValueError("radial_nodes and angular_samples must be given together")
        return self


class RefineSection(_Section):
    enabled: bool = True
    initial_step: float = Field(0.1, gt=0)
    min_step: float = Field(0.0125, gt=0)


class DetectionSection(_Section):
    waist_ratios: List[float] = Field(default_factory=lambda: [0.5, 1.0, 2.0], min_length=1)
    p_max: int = Field(10, ge=1, le=40)


class SweepSection(_Section):
    parameter: Literal["theta_p", "N", "L"] = "N"
    values: List[float] = Field(default_factory=list)
    theta_candidates_deg: Optional[List[float]] = None


class RunConfig(_Section):
    crystal: CrystalSection = Field(default_factory=CrystalSection)
    pump: PumpSection = Field(default_factory=PumpSection)
    target: Optional[TargetSection] = None
    swarm: SwarmSection = Field(default_factory=SwarmSection)
    grids: GridsSection = Field(default_factory=GridsSection)
    refine: RefineSection = Field(default_factory=RefineSection)
    detection: DetectionSection = Field(default_factory=DetectionSection)
    sweep: SweepSection = Field(default_factory=SweepSection)

    def crystal_config(self) -> CrystalConfig:
        c = self.crystal
        return CrystalConfig.from_lab_units(c.thickness_mm, c.theta_p_deg, self.pump.wavelength_nm, c.dispersion)

    def raw_coefficients(self) -> np.ndarray:
        p = self.pump
        if p.coefficients_table is not None:
            return coefficient_row(p.coefficients_table, p.coefficients_row)
        if p.coefficients is not None:
            return np.array([complex(re, im) for re, im in p.coefficients], dtype=complex)
        return np.array([1.0 + 0j])

    def pump_config(self) -> PumpConfig:
        return PumpConfig.from_lab_units(self.pump.wavelength_nm, self.pump.waist_um, self.raw_coefficients(),
                                         self.pump.n_modes)

    @property
    def mode_count(self) -> int:
        if self.pump.n_modes is not None:
            return self.pump.n_modes
        return max(1, len(self.raw_coefficients()))

    @property
    def half_window(self) -> int:
        return self.target.half_window if self.target else DEFAULT_HALF_WINDOW

    def target_spectrum(self) -> Optional[TargetSpectrum]:
        if self.target is None:
            return None
        return make_target(self.target.shape, self.target.width, self.target.half_window)

    def swarm_config(self) -> SwarmConfig:
        s = self.swarm
        return SwarmConfig(particle_count=s.particles, iteration_count=s.iterations, inertia=s.inertia,
                           cognitive=s.cognitive, social=s.social, lower_bound=s.bounds[0],
                           upper_bound=s.bounds[1], seed=s.seed,
                           polish_iterations=s.polish_iterations)

    def refine_schedule(self) -> RefineSchedule:
        return RefineSchedule(initial_step=self.refine.initial_step, min_step=self.refine.min_step)

    def _grid(self, tier: str, half_window: int) -> GridSpec:
        g = self.grids
        if g.radial_nodes is not None:
            grid = GridSpec(g.radial_nodes, g.angular_samples, g.rho_max_per_m, tier="custom")
            grid.check_window(half_window)
            return grid
        grid = grid_for_tier(tier, half_window)
        if g.rho_max_per_m is not None:
            grid = GridSpec(grid.radial_nodes, grid.angular_samples, g.rho_max_per_m, tier=tier)
        return grid

    def report_grids(self, half_window: int = None) -> GridSpec:
        return self._grid(self.grids.tier, self.half_window if half_window is None else half_window)

    def search_grids(self, half_window: int = None) -> GridSpec:
        return self._grid(self.grids.search_tier, self.half_window if half_window is None else half_window)


def _line_of(node, loc) -> Optional[int]:
    """1-based line of the YAML node at a pydantic error location, walking as deep as it matches."""
    line = None
    for key in loc:
        if isinstance(node, yaml.MappingNode):
            match = next((v for k, v in node.value if k.value == str(key)), None)
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            match = node.value[key]
        else:
            match = None
        if match is None:
            break
        node = match
        line = node.start_mark.line + 1
    return line


def parse_run_config(text: str, source: str = "<config>", overrides: dict = None) -> RunConfig:
    try:
        raw = yaml.safe_load(text) or {}
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise ConfigError(f"invalid YAML: {getattr(e, 'problem', e)}", source=source,
                          line=mark.line + 1 if mark else None)
    if not isinstance(raw, dict):
        raise ConfigError("top level must be a mapping of sections", source=source, line=1)
    for dotted, value in (overrides or {}).items():
        if value is None:
            continue
        section, key = dotted.split(".")
        raw.setdefault(section, {})
        if isinstance(raw[section], dict):
            raw[section][key] = value
    try:
        config = RunConfig.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        loc = first["loc"]
        raise ConfigError(first["msg"], source=source, line=_line_of(root, loc) if root else None,
                          key=".".join(str(k) for k in loc))
    return config


def load_run_config(path: str, overrides: dict = None) -> RunConfig:
    if not os.path.isfile(path):
        raise ConfigError("config file not found", source=path)
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    config = parse_run_config(text, source=path, overrides=overrides)
    logger.info(f"Loaded run configuration from {path}")
    return config
