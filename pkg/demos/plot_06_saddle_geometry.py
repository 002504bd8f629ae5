"""
Saddle point geometry
=====================

The asymptotics come from a multivariate saddle point. Here we check the
saddle algebra numerically: the algebraic equation, the Hessian determinant
against the assembled matrix, and the location of the maximum of |integrand|.
"""

import math

import numpy as np

from prodwishart import asymptotics as asy

phi = asy.PhiCoord(math.pi / 8, 3)
sd = asy.saddle_coords(phi)
print("a =", sd.a, " (2^{1/4} =", 2**0.25, ")")
print("residual of the algebraic equation:", asy.ae_residual(phi))
print("Hessian det closed form:", asy.hessian_det(phi))
print("Hessian det assembled:  ", asy.hessian_det_assembled(phi))
print("real-part determinant:  ", asy.real_hessian_det(phi))

###############################################################################
# Global maximisers of |H| on the torus: grid search then BFGS.

for t in asy.h_argmax(phi):
    print("maximiser", np.round(t, 10), " saddle", np.round(asy.saddle_point(phi), 10))
