"""Radial Gauss-Legendre and uniform angular grids for the spectrum integrals."""
from dataclasses import dataclass

import numpy as np
from scipy import special

from scripts.errors import DomainError


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RadialGrid:
    nodes: np.ndarray
    weights: np.ndarray
    rho_max: float

    def __post_init__(self):
        object.__setattr__(self, "nodes", _frozen(self.nodes))
        object.__setattr__(self, "weights", _frozen(self.weights))
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise DomainError("radial nodes and weights must be 1-D arrays of equal length")
        if np.any(self.nodes <= 0) or np.any(np.diff(self.nodes) <= 0):
            raise DomainError("radial nodes must be strictly positive and increasing")
        if np.any(self.weights <= 0):
            raise DomainError("radial quadrature weights must be positive")

    def __len__(self):
        return len(self.nodes)

    @property
    def measure(self) -> np.ndarray:
        """Weights times rho, i.e. the discretized rho d(rho)."""
        return self.weights * self.nodes


@dataclass(frozen=True)
class AngularGrid:
    sample_count: int

    def __post_init__(self):
        m = self.sample_count
        if m < 2 or m & (m - 1):
            raise DomainError(f"angular sample count must be a power of two >= 2, got {m}")

    @classmethod
    def build(cls, sample_count: int) -> "AngularGrid":
        return cls(int(sample_count))

    @property
    def samples(self) -> np.ndarray:
        # k - M/2 is symmetric about zero, so -sample[k] == sample[M-k] exactly
        m = self.sample_count
        return 2.0 * np.pi * np.arange(-m // 2, m // 2) / m

    @property
    def spacing(self) -> float:
        return 2.0 * np.pi / self.sample_count


def gauss_legendre(n: int, a: float, b: float):
    """Gauss-Legendre nodes and weights mapped to [a, b]."""
    if n < 1:
        raise DomainError(f"node count must be at least 1, got {n}")
    if not a < b:
        raise DomainError(f"interval must satisfy a < b, got [{a}, {b}]")
    x, w = special.roots_legendre(n)
    half = 0.5 * (b - a)
    return half * x + 0.5 * (a + b), half * w


def composite_gauss_legendre(n_nodes: int, rho_max: float, panel_nodes: int = 16) -> RadialGrid:
    """Split [0, rho_max] into equal panels holding ``n_nodes`` Gauss-Legendre nodes in total."""
    if n_nodes < 1:
        raise DomainError(f"node count must be at least 1, got {n_nodes}")
    if not np.isfinite(rho_max) or rho_max <= 0:
        raise DomainError(f"rho_max must be positive and finite, got {rho_max}")
    panels = max(1, round(n_nodes / panel_nodes))
    counts = [n_nodes // panels + (1 if k < n_nodes % panels else 0) for k in range(panels)]
    edges = np.linspace(0.0, rho_max, panels + 1)
    nodes, weights = [], []
    for k, count in enumerate(counts):
        x, w = gauss_legendre(count, edges[k], edges[k + 1])
        nodes.append(x)
        weights.append(w)
    return RadialGrid(np.concatenate(nodes), np.concatenate(weights), float(rho_max))
