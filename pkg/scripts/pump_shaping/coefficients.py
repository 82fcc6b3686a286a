import logging
import os
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np
import yaml
from pydantic import BaseModel, ValidationError, field_validator

from scripts.config.env_config import DATA_DIR
from scripts.errors import ConfigError, DegeneratePumpError

logger = logging.getLogger(__name__)

COEFFICIENT_DIR = os.path.join(DATA_DIR, "coefficients")
NORM_DRIFT_TOLERANCE = 0.05


def as_complex(raw) -> np.ndarray:
    """Accept complex numbers or [re, im] pairs and return a 1-D complex array."""
    arr = np.asarray(raw)
    if arr.size == 0:
        return np.zeros(0, dtype=complex)
    if arr.ndim == 2 and arr.shape[1] == 2 and not np.iscomplexobj(arr):
        return arr[:, 0].astype(float) + 1j * arr[:, 1].astype(float)
    if arr.ndim != 1:
        raise DegeneratePumpError(f"coefficients must be a flat list or [re, im] pairs, got shape {arr.shape}")
    return arr.astype(complex)


def norm_drift(raw) -> float:
    """|sqrt(sum |a_p|^2) - 1| of an unnormalized coefficient list."""
    return abs(float(np.linalg.norm(as_complex(raw))) - 1.0)


def normalize_coefficients(raw) -> np.ndarray:
    """Unit-norm coefficients with the first nonzero entry rotated onto the positive real axis."""
    alpha = as_complex(raw)
    if alpha.size == 0:
        raise DegeneratePumpError("coefficient list is empty")
    if not np.all(np.isfinite(alpha)):
        raise DegeneratePumpError("coefficient list contains non-finite entries")
    norm = np.linalg.norm(alpha)
    if norm == 0:
        raise DegeneratePumpError("all pump coefficients are zero")
    alpha = alpha / norm
    lead = alpha[np.flatnonzero(np.abs(alpha) > 0)[0]]
    alpha = alpha * (np.conj(lead) / abs(lead))
    # the rotation leaves rounding residue on the leading entry
    first = np.flatnonzero(np.abs(alpha) > 0)[0]
    alpha[first] = abs(alpha[first])
    return alpha


class CoefficientRow(BaseModel):
    shape: str
    width: int
    coefficients: List[Tuple[float, float]]

    @field_validator("coefficients")
    @classmethod
    def _non_empty(cls, value):
        if not value:
            raise ValueError("coefficient row is empty")
        return value

    @property
    def values(self) -> np.ndarray:
        return as_complex(self.coefficients)


class CoefficientTable(BaseModel):
    name: str
    thickness_mm: float
    theta_p_deg: float
    waist_um: float
    rows: Dict[str, CoefficientRow]


@lru_cache(maxsize=None)
def load_coefficient_table(name: str) -> CoefficientTable:
    path = name if os.path.isfile(name) else os.path.join(COEFFICIENT_DIR, f"{name}.yaml")
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f)
        table = CoefficientTable.model_validate(raw)
    except FileNotFoundError:
        available = sorted(os.path.splitext(f)[0] for f in os.listdir(COEFFICIENT_DIR))
        raise ConfigError(f"coefficient table '{name}' not found; available: {available}", source=path)
    except ValidationError as e:
        first = e.errors()[0]
        raise ConfigError(first["msg"], source=path, key=".".join(str(k) for k in first["loc"]))
    logger.info(f"Loaded coefficient table '{table.name}' with {len(table.rows)} rows from {path}")
    return table


def coefficient_row(name: str, row: str) -> np.ndarray:
    """Raw (unnormalized) coefficients of one table row."""
    table = load_coefficient_table(name)
    if row not in table.rows:
        raise ConfigError(f"row '{row}' not in table '{name}'; available: {sorted(table.rows)}", key="coefficients_row")
    values = table.rows[row].values
    drift = norm_drift(values)
    if drift > NORM_DRIFT_TOLERANCE:
        logger.warning(f"Row {name}/{row} norm drifts {drift:.3f} from unity before normalization")
    return values
