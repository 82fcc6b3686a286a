"""Longitudinal phase mismatch and the sinc phase-matching function."""
import logging

import numpy as np
from scipy import optimize

from scripts.crystal_optics.crystal import AnisotropyParams, CrystalConfig, anisotropy, mismatch_constants
from scripts.errors import UnphasematchableError

logger = logging.getLogger(__name__)

COLLINEAR_XTOL = 1e-10


def delta_kz(rho_s, rho_i, delta_phi, config: CrystalConfig):
    """Simplified mismatch K_p0 (n_so - eta_p) - |q_s - q_i|^2 / (2 eta_p K_p0) in rad/m.

    Assumes alpha_p = 0 and beta_p = gamma_p = 1. Inputs broadcast against each other.
    """
    offset, denom = mismatch_constants(config)
    rho_s = np.asarray(rho_s, dtype=float)
    rho_i = np.asarray(rho_i, dtype=float)
    transverse = rho_s ** 2 + rho_i ** 2 - 2.0 * rho_s * rho_i * np.cos(delta_phi)
    return offset - transverse / denom


def delta_kz_full(q_s, q_i, config: CrystalConfig, params: AnisotropyParams = None):
    """Mismatch with the walk-off and elliptical curvature terms kept.

    ``q_s`` and ``q_i`` are Cartesian transverse momenta with a trailing axis of length 2
    (x lies in the plane holding the optic axis). Signal and idler use n_so in their own
    paraxial curvature.
    """
    q_s = np.asarray(q_s, dtype=float)
    q_i = np.asarray(q_i, dtype=float)
    p = anisotropy(config) if params is None else params
    k_p0 = config.k_p0
    n_so = config.n_signal
    q_px = q_s[..., 0] + q_i[..., 0]
    q_py = q_s[..., 1] + q_i[..., 1]
    k_pz = (-p.alpha * q_px + p.eta * k_p0
            - (p.beta ** 2 * q_px ** 2 + p.gamma ** 2 * q_py ** 2) / (2.0 * p.eta * k_p0))
    # K_s0 = K_i0 = K_p0 / 2 in the degenerate case
    k_sz = 0.5 * n_so * k_p0 - np.sum(q_s ** 2, axis=-1) / (n_so * k_p0)
    k_iz = 0.5 * n_so * k_p0 - np.sum(q_i ** 2, axis=-1) / (n_so * k_p0)
    return k_sz + k_iz - k_pz


def delta_kz_discrepancy(config: CrystalConfig, rho_max: float, samples: int = 2000, seed: int = 0) -> float:
    """Largest |full - simplified| mismatch over random momentum pairs inside ``rho_max``, in rad/m."""
    rng = np.random.default_rng(seed)
    radius = rho_max * np.sqrt(rng.uniform(size=(2, samples)))
    angle = rng.uniform(-np.pi, np.pi, size=(2, samples))
    q_s = np.stack([radius[0] * np.cos(angle[0]), radius[0] * np.sin(angle[0])], axis=-1)
    q_i = np.stack([radius[1] * np.cos(angle[1]), radius[1] * np.sin(angle[1])], axis=-1)
    full = delta_kz_full(q_s, q_i, config)
    simple = delta_kz(radius[0], radius[1], angle[0] - angle[1], config)
    gap = float(np.max(np.abs(full - simple)))
    logger.info(f"Full vs simplified mismatch over {samples} pairs (rho_max={rho_max:.4g}): max gap {gap:.4g} rad/m")
    return gap


def phase_matching(rho_s, rho_i, delta_phi, config: CrystalConfig):
    """Phi = sinc(x) exp(i x) with x = delta_kz L / 2 and sinc(x) = sin(x)/x."""
    x = 0.5 * config.thickness * delta_kz(rho_s, rho_i, delta_phi, config)
    return np.sinc(x / np.pi) * np.exp(1j * x)


def collinear_angle(config: CrystalConfig) -> float:
    """Angle in (0, pi/2) where eta_p equals n_o at the signal wavelength."""
    n_so = config.n_signal

    def residual(theta):
        return anisotropy(config, theta).eta - n_so

    lo, hi = residual(0.0), residual(np.pi / 2)
    if not lo > 0 > hi:
        raise UnphasematchableError(
            f"no collinear angle: n_o(signal)={n_so:.6f} outside (n_e(pump), n_o(pump)) = ({hi + n_so:.6f}, {lo + n_so:.6f})")
    theta = optimize.bisect(residual, 0.0, np.pi / 2, xtol=COLLINEAR_XTOL, maxiter=200)
    logger.info(f"Collinear phase-matching angle: {np.degrees(theta):.5f} deg")
    return float(theta)


def collinear_offset(config: CrystalConfig) -> float:
    """Delta k_z at zero transverse momentum, K_p0 (n_so - eta_p)."""
    return mismatch_constants(config)[0]


def phase_matching_ring_radius(config: CrystalConfig) -> float:
    """Radius of rho_s = rho_i where the anti-correlated mismatch vanishes; 0 at or below collinear."""
    offset, denom = mismatch_constants(config)
    if offset <= 0:
        return 0.0
    # along delta_phi = pi the transverse term is 4 rho^2
    return float(np.sqrt(offset * denom / 4.0))


def first_zero_radius(config: CrystalConfig) -> float:
    """Radius on the anti-correlated ring where delta_kz L / 2 first reaches -pi."""
    offset, denom = mismatch_constants(config)
    return float(np.sqrt((max(offset, 0.0) + 2.0 * np.pi / config.thickness) * denom / 4.0))
