"""
Exact polynomials and certified zeros
=====================================

The polynomials F_n are alternating sums whose terms are huge compared to
the result, so double precision is useless beyond small n. Here we look at
exact coefficients, extended-precision evaluation, and zeros enclosed by
brackets on which the sign change is verified in exact arithmetic.
"""

from fractions import Fraction

import numpy as np

from prodwishart.charpoly import PolySpec, coefficients, evaluate, evaluate_avg_charpoly, zeros

# r = 2 with no shifts is a Laguerre-type case: F_2 = 1 - 4x + 3/2 x^2
spec = PolySpec(r=2, kappa=0, nu=[0])
print("F_2 coefficients:", coefficients(spec, 2).coeffs)

# the average characteristic polynomial P_n is the monic multiple of F_n
print("P_1(0) =", evaluate_avg_charpoly(spec, 1, Fraction(0), exact=True))

###############################################################################
# Cancellation. At n = 60 the naive double sum is garbage, while the adaptive
# evaluation raises precision until two successive results agree.

n, x = 60, 100.0  # inside the zero region, rescaled x = 5/3
c = coefficients(spec, n).coeffs
naive = sum(float(ck) * x**k for k, ck in enumerate(c))
good = evaluate(spec, n, x)
print(f"naive double sum {naive:.6e}")
print(f"adaptive         {float(good):.6e} at {good.precision_bits} bits")

###############################################################################
# Certified zeros for a three-factor product. Each zero comes with a rational
# bracket on which F_n changes sign exactly.

spec3 = PolySpec(r=3, kappa=2, nu=[2, 5])
cz = zeros(spec3, 20)
lo, hi = cz.brackets[0]
print("smallest zero", cz.zeros[0], "bracket width", float(hi - lo))
print("rescaled zeros (divided by n^2):", np.round(cz.rescaled(3), 4))
