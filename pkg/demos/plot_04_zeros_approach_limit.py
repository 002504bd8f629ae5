"""
Zeros approach the limit law
============================

Kolmogorov-Smirnov distance between the rescaled zero counting measure of F_n
and the limiting distribution function, for growing n.
"""

from prodwishart.charpoly import PolySpec, zeros
from prodwishart.empirics import ks_distance, zero_counting_measure
from prodwishart.raney import cdf_V_array

for spec in (PolySpec(2, 0, [0]), PolySpec(3, 2, [2, 5])):
    for n in (25, 50, 100, 200):
        mu = zero_counting_measure(zeros(spec, n), float(n) ** (spec.r - 1))
        d = ks_distance(mu, lambda x: cdf_V_array(x, spec.r))
        print(f"r={spec.r} kappa={spec.kappa} nu={spec.nu} n={n:4d}  KS = {d:.4f}")
