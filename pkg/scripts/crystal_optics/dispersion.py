import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np
import yaml

from scripts.config.env_config import DATA_DIR
from scripts.errors import ConfigError, DispersionRangeError

logger = logging.getLogger(__name__)

DISPERSION_DIR = os.path.join(DATA_DIR, "dispersion")
DEFAULT_DISPERSION = "bbo_eimerl"


@dataclass(frozen=True)
class SellmeierCoefficients:
    A: float
    B: float
    C: float
    D: float

    def index(self, wavelength_um):
        """n = sqrt(A + B / (lambda^2 - C) - D * lambda^2), lambda in micrometres."""
        lam2 = np.asarray(wavelength_um, dtype=float) ** 2
        return np.sqrt(self.A + self.B / (lam2 - self.C) - self.D * lam2)


@dataclass(frozen=True)
class SellmeierSet:
    material: str
    source: str
    version: int
    range_nm: Tuple[float, float]
    ordinary: SellmeierCoefficients
    extraordinary: SellmeierCoefficients

    @classmethod
    def load(cls, name: str = DEFAULT_DISPERSION) -> "SellmeierSet":
        return _load_sellmeier(name)

    def check_range(self, wavelength: float) -> None:
        lo, hi = self.range_nm
        wl_nm = np.asarray(wavelength, dtype=float) * 1e9
        if np.any(wl_nm < lo - 1e-9) or np.any(wl_nm > hi + 1e-9):
            raise DispersionRangeError(
                f"wavelength {np.round(wl_nm, 3)} nm outside the {self.material} dispersion window [{lo}, {hi}] nm")

    def indices(self, wavelength: float):
        """(n_o, n_e) at ``wavelength`` given in metres."""
        self.check_range(wavelength)
        wl_um = np.asarray(wavelength, dtype=float) * 1e6
        n_o = self.ordinary.index(wl_um)
        n_e = self.extraordinary.index(wl_um)
        if np.ndim(n_o) == 0:
            return float(n_o), float(n_e)
        return n_o, n_e


@lru_cache(maxsize=None)
def _load_sellmeier(name: str) -> SellmeierSet:
    path = name if os.path.isfile(name) else os.path.join(DISPERSION_DIR, f"{name}.yaml")
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f)
        sellmeier = SellmeierSet(
            material=raw["material"],
            source=raw["source"],
            version=int(raw["version"]),
            range_nm=tuple(float(v) for v in raw["wavelength_range_nm"]),
            ordinary=SellmeierCoefficients(**raw["ordinary"]),
            extraordinary=SellmeierCoefficients(**raw["extraordinary"]),
        )
    except FileNotFoundError:
        raise ConfigError(f"dispersion data '{name}' not found", source=path)
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"malformed dispersion data: {e}", source=path)
    logger.info(f"Loaded {sellmeier.material} dispersion '{sellmeier.source}' v{sellmeier.version} from {path}")
    return sellmeier


def refractive_indices(wavelength: float, config) -> Tuple[float, float]:
    """Ordinary and extraordinary indices at ``wavelength`` (m) for a crystal config or Sellmeier set."""
    sellmeier = getattr(config, "sellmeier", config)
    return sellmeier.indices(wavelength)
