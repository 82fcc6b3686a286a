"""Associated Laguerre polynomials and the momentum-space Laguerre-Gaussian radial profile."""
import numpy as np
from scipy.special import gammaln

from scripts.errors import DomainError, UnsupportedOrderError

MAX_LAGUERRE_ORDER = 200

# exp(-i*pi*|l|/2) for |l| mod 4, kept exact
_QUARTER_TURNS = (1.0 + 0.0j, -1.0j, -1.0 + 0.0j, 1.0j)


def _check_order(p: int, alpha: int) -> None:
    if int(p) != p or p < 0:
        raise DomainError(f"Laguerre order must be a non-negative integer, got {p}")
    if int(alpha) != alpha or alpha < 0:
        raise DomainError(f"Laguerre parameter must be a non-negative integer, got {alpha}")
    if p > MAX_LAGUERRE_ORDER:
        raise UnsupportedOrderError(
            f"Laguerre order {p} exceeds the supported bound {MAX_LAGUERRE_ORDER}")


def laguerre_stack(p_max: int, alpha: int, x) -> np.ndarray:
    """Return L_0^alpha(x) ... L_{p_max}^alpha(x) stacked along a new leading axis."""
    _check_order(p_max, alpha)
    x = np.asarray(x, dtype=float)
    out = np.empty((p_max + 1,) + x.shape)
    out[0] = 1.0
    if p_max >= 1:
        out[1] = 1.0 + alpha - x
    for p in range(1, p_max):
        # (p+1) L_{p+1} = (2p+1+alpha-x) L_p - (p+alpha) L_{p-1}
        out[p + 1] = ((2 * p + 1 + alpha - x) * out[p] - (p + alpha) * out[p - 1]) / (p + 1)
    return out


def laguerre(p: int, alpha: int, x):
    """Associated Laguerre polynomial L_p^alpha(x) by three-term recurrence."""
    values = laguerre_stack(p, alpha, x)[p]
    return float(values) if values.ndim == 0 else values


def lg_radial(l: int, p: int, w: float, rho):
    """Azimuth-stripped momentum-space LG amplitude with waist ``w`` at radial momentum ``rho``.

    Normalized so that the integral of |value|^2 * 2*pi*rho d(rho) over [0, inf) is one.
    """
    if not np.isfinite(w) or w <= 0:
        raise DomainError(f"waist must be a positive finite number, got {w}")
    rho = np.asarray(rho, dtype=float)
    if not np.all(np.isfinite(rho)) or np.any(rho < 0):
        raise DomainError("radial momentum must be finite and non-negative")
    m = abs(int(l))
    x = 0.5 * (w * rho) ** 2
    log_norm = 0.5 * (2.0 * np.log(w) + gammaln(p + 1) - np.log(2.0 * np.pi) - gammaln(m + p + 1))
    if m == 0:
        log_mag = log_norm - 0.5 * x
    else:
        with np.errstate(divide="ignore"):
            log_mag = log_norm + 0.5 * m * np.log(x) - 0.5 * x
    magnitude = np.exp(log_mag) * laguerre_stack(p, m, x)[p]
    phase = (-1.0) ** p * _QUARTER_TURNS[m % 4]
    value = magnitude * phase
    return complex(value) if value.ndim == 0 else value
