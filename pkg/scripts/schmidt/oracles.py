"""Slow two-angle reference integrals.

Nothing here uses the delta_phi reduction: both azimuths are sampled independently and the
pump and mismatch are evaluated from Cartesian transverse momenta. Meant for tests on small grids.
"""
import numpy as np

from scripts.crystal_optics import CrystalConfig
from scripts.crystal_optics.crystal import mismatch_constants
from scripts.modemath import AngularGrid, RadialGrid, laguerre_stack, lg_radial
from scripts.pump_shaping import PumpConfig


def _two_angle_field(rho_s: float, rho_i: float, phi: np.ndarray, pump: PumpConfig, crystal: CrystalConfig):
    """V * Phi on the (phi_s, phi_i) product grid for one radial pair."""
    qs = rho_s * np.stack([np.cos(phi), np.sin(phi)])[:, :, None]
    qi = rho_i * np.stack([np.cos(phi), np.sin(phi)])[:, None, :]
    sum_sq = np.sum((qs + qi) ** 2, axis=0)
    diff_sq = np.sum((qs - qi) ** 2, axis=0)
    w = pump.waist
    x = 0.5 * w ** 2 * sum_sq
    modes = laguerre_stack(pump.n_modes - 1, 0, x)
    signs = (-1.0) ** np.arange(pump.n_modes)
    pump_field = np.sqrt(w ** 2 / (2.0 * np.pi)) * np.exp(-0.5 * x) * np.tensordot(pump.coefficients * signs, modes, 1)
    offset, denom = mismatch_constants(crystal)
    half_phase = 0.5 * crystal.thickness * (offset - diff_sq / denom)
    return pump_field * np.sinc(half_phase / np.pi) * np.exp(1j * half_phase)


def _angular_projection(field: np.ndarray, phi: np.ndarray, l_s: int, l_i: int, spacing: float) -> complex:
    """Double-angle integral of field * exp(-i l_s phi_s - i l_i phi_i)."""
    return complex(np.exp(-1j * l_s * phi) @ field @ np.exp(-1j * l_i * phi) * spacing ** 2)


def brute_force_spectrum(pump: PumpConfig, crystal: CrystalConfig, orders, radial: RadialGrid,
                         angular: AngularGrid) -> np.ndarray:
    """Unnormalized S_l = (1/4 pi^2) int int rho_s rho_i |F_l|^2 for each l in ``orders``."""
    orders = np.asarray(orders)
    phi = angular.samples
    measure = radial.measure
    out = np.zeros(len(orders))
    for i, rho_s in enumerate(radial.nodes):
        for j, rho_i in enumerate(radial.nodes):
            field = _two_angle_field(rho_s, rho_i, phi, pump, crystal)
            for k, l in enumerate(orders):
                f_l = _angular_projection(field, phi, int(l), -int(l), angular.spacing)
                out[k] += measure[i] * measure[j] * abs(f_l) ** 2
    return out / (4.0 * np.pi ** 2)


def brute_force_coefficient(l_s: int, p_s: int, l_i: int, p_i: int, w_s: float, pump: PumpConfig,
                            crystal: CrystalConfig, radial: RadialGrid, angular: AngularGrid) -> complex:
    """Four-dimensional quadrature of V Phi against conjugated signal and idler LG modes."""
    phi = angular.samples
    measure = radial.measure
    signal = np.conj(lg_radial(l_s, p_s, w_s, radial.nodes)) * measure
    idler = np.conj(lg_radial(l_i, p_i, w_s, radial.nodes)) * measure
    total = 0j
    for i, rho_s in enumerate(radial.nodes):
        for j, rho_i in enumerate(radial.nodes):
            field = _two_angle_field(rho_s, rho_i, phi, pump, crystal)
            total += signal[i] * idler[j] * _angular_projection(field, phi, l_s, l_i, angular.spacing)
    return total
