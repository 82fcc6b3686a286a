from dataclasses import dataclass

import numpy as np
import pandas as pd

from scripts.errors import DomainError, WindowOverflowError
from scripts.modemath import fourier_orders

TARGET_SHAPES = ("gaussian", "triangular", "rectangular")


@dataclass(frozen=True, eq=False)
class TargetSpectrum:
    """Normalized target S_l^t over l = -D .. D.

    ``width`` is the standard deviation for gaussian targets and the full base width otherwise.
    Even-width rectangles cover l = -width/2 .. width/2 - 1.
    """
    shape: str
    width: int
    half_window: int
    values: np.ndarray

    @property
    def orders(self) -> np.ndarray:
        return fourier_orders(self.half_window)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"l": self.orders, "S_l_target": self.values})


def make_target(shape: str, width: int, half_window: int) -> TargetSpectrum:
    if shape not in TARGET_SHAPES:
        raise DomainError(f"unknown target shape '{shape}'; choose from {list(TARGET_SHAPES)}")
    if width <= 0:
        raise DomainError(f"target width must be positive, got {width}")
    if half_window < 1:
        raise DomainError(f"half-window must be at least 1, got {half_window}")
    if width > 2 * half_window:
        raise WindowOverflowError(f"target width {width} does not fit the window |l| <= {half_window}")
    l = fourier_orders(half_window).astype(float)
    if shape == "gaussian":
        values = np.exp(-l ** 2 / (2.0 * width ** 2))
    elif shape == "triangular":
        values = np.maximum(0.0, 1.0 - np.abs(l) / (width / 2.0))
    else:
        lo = -(width // 2)
        values = ((l >= lo) & (l <= lo + width - 1)).astype(float)
    values = values / values.sum()
    values.setflags(write=False)
    return TargetSpectrum(shape=shape, width=int(width), half_window=int(half_window), values=values)
