"""Unit-mass point measures and their distance to a target distribution."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .charpoly import CertifiedZeros
from .numerics import DomainError


@dataclass(frozen=True, eq=False)
class EmpiricalMeasure:
    """Equal-weight atoms, kept sorted and read-only."""

    atoms: np.ndarray

    def __post_init__(self):
        arr = np.sort(np.asarray(self.atoms, dtype=float).ravel())
        arr.setflags(write=False)
        object.__setattr__(self, "atoms", arr)

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def weight(self) -> float:
        return 1.0 / len(self.atoms)

    def cdf(self, x):
        """Right-continuous empirical distribution function."""
        return np.searchsorted(self.atoms, x, side="right") / len(self.atoms)

    def moment(self, k: int) -> float:
        return float(np.mean(self.atoms**k))


def zero_counting_measure(zeros: CertifiedZeros, scale: float) -> EmpiricalMeasure:
    """Atoms zeros/scale, weight 1/n each; callers pass scale = n^{r-1}."""
    if not scale > 0:
        raise DomainError(f"scale must be positive, got {scale}")
    return EmpiricalMeasure(np.asarray(zeros.zeros, dtype=float) / scale)


def ks_distance(mu: EmpiricalMeasure, cdf: Callable) -> float:
    """One-sample Kolmogorov-Smirnov statistic sup |F_emp - cdf|.

    ``cdf`` may be vectorized; scalar callables are applied atom by atom.
    """
    x = mu.atoms
    m = len(x)
    if m == 0:
        raise DomainError("empty measure")
    try:
        target = np.asarray(cdf(x), dtype=float)
        if target.shape != x.shape:
            raise ValueError
    except (TypeError, ValueError):
        target = np.array([float(cdf(float(t))) for t in x])
    i = np.arange(1, m + 1)
    d_plus = np.max(i / m - target)
    d_minus = np.max(target - (i - 1) / m)
    return float(max(d_plus, d_minus, 0.0))


def histogram(mu: EmpiricalMeasure, bins: int = 50, range_: tuple[float, float] | None = None):
    """Density-normalized histogram: (bin edges, heights)."""
    heights, edges = np.histogram(mu.atoms, bins=bins, range=range_, density=True)
    return edges, heights
