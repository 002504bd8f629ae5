"""Hypergeometric polynomials from products of Gaussian and truncated unitary matrices.

Exact and certified evaluation of the polynomials and their zeros, their
oscillatory large-degree asymptotics, the Raney limit law of the rescaled
zeros and squared singular values, and Monte Carlo for the matrix products.
"""

from .charpoly import CertificationError, CertifiedZeros, PolySpec, RationalPoly
from .empirics import EmpiricalMeasure, ks_distance, zero_counting_measure
from .numerics import AdaptiveReal, DomainError, NumericalFailure, PrecisionCapExceeded
from .raney import RaneyParams, SupportInterval
from .rmt import EnsembleConfig, ensemble_run

__all__ = [
    "AdaptiveReal",
    "CertificationError",
    "CertifiedZeros",
    "DomainError",
    "EmpiricalMeasure",
    "EnsembleConfig",
    "NumericalFailure",
    "PolySpec",
    "PrecisionCapExceeded",
    "RaneyParams",
    "RationalPoly",
    "SupportInterval",
    "ensemble_run",
    "ks_distance",
    "zero_counting_measure",
]
