from scripts.modemath.angular import angular_fourier, fourier_orders
from scripts.modemath.quadrature import (AngularGrid, RadialGrid, composite_gauss_legendre,
                                         gauss_legendre)
from scripts.modemath.special import MAX_LAGUERRE_ORDER, laguerre, laguerre_stack, lg_radial

__all__ = [
    "AngularGrid",
    "MAX_LAGUERRE_ORDER",
    "RadialGrid",
    "angular_fourier",
    "composite_gauss_legendre",
    "fourier_orders",
    "gauss_legendre",
    "laguerre",
    "laguerre_stack",
    "lg_radial",
]
