"""Coefficient of determination, entanglement of formation and Schmidt number of OAM spectra."""
import numpy as np
from scipy.special import entr

from scripts.errors import UndefinedRSquaredError, WindowMismatchError


def _values(spectrum) -> np.ndarray:
    return np.asarray(getattr(spectrum, "values", spectrum), dtype=float)


def r_squared(target, observed) -> float:
    """R^2 in percent; unclamped, so poor fits go negative."""
    t = _values(target)
    o = _values(observed)
    if t.shape != o.shape:
        raise WindowMismatchError(f"target has {t.size} orders but observed has {o.size}")
    if np.ptp(t) == 0:
        raise UndefinedRSquaredError("R^2 is undefined for a constant target")
    total = np.sum((t - t.mean()) ** 2)
    return float((1.0 - np.sum((t - o) ** 2) / total) * 100.0)


def entanglement_of_formation(spectrum) -> float:
    """Shannon entropy of the Schmidt weights in bits."""
    return float(np.sum(entr(_values(spectrum))) / np.log(2.0))


def schmidt_number(spectrum) -> float:
    return float(1.0 / np.sum(_values(spectrum) ** 2))


def spectrum_summary(spectrum) -> dict:
    values = _values(spectrum)
    half_window = (values.size - 1) // 2
    inner = np.abs(np.arange(-half_window, half_window + 1)) <= half_window // 2
    return {
        "entanglement_of_formation_bits": entanglement_of_formation(values),
        "schmidt_number": schmidt_number(values),
        "dimension": int(values.size),
        "inner_mass": float(values[inner].sum()),
    }
