import numpy as np

from scripts.errors import AliasingError


def fourier_orders(l_max: int) -> np.ndarray:
    return np.arange(-l_max, l_max + 1)


def angular_fourier(samples, l_max: int) -> np.ndarray:
    """Full double-angle integral of f(phi_s - phi_i) * exp(-i l (phi_s - phi_i)) for |l| <= l_max.

    ``samples`` holds f on the AngularGrid along its last axis. The result has the same
    leading shape with a last axis indexed by l = -l_max .. l_max.
    """
    samples = np.asarray(samples)
    m = samples.shape[-1]
    if l_max < 0:
        raise AliasingError(f"l_max must be non-negative, got {l_max}")
    if m < 4 * l_max:
        raise AliasingError(f"{m} angular samples cannot resolve |l| <= {l_max}; need at least {4 * l_max}")
    spectrum = np.fft.fft(samples, axis=-1)
    orders = fourier_orders(l_max)
    # grid starts at -pi, so each order picks up exp(i l pi) = (-1)^l
    signs = np.where(orders % 2 == 0, 1.0, -1.0)
    return (4.0 * np.pi ** 2 / m) * signs * spectrum[..., orders % m]
