"""
The Raney limit law
===================

The rescaled zeros and the rescaled squared singular values share a limit:
the Raney distribution with parameters ((r+1)/2, 1/2). Its density and
distribution function have closed forms in the angle phi.
"""

from pathlib import Path

import numpy as np

from prodwishart import raney
from prodwishart.asymptotics import x_star
from prodwishart.svgplot import plot_svg

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)
r = 3

xs = np.linspace(0, x_star(r), 400)
V = raney.cdf_V_array(xs, r)
print("largest gap between the two CDF forms:",
      np.max(np.abs(V - raney.cdf_V_array(xs, r, "closed"))))
plot_svg({"x": xs, "V": V}, str(out / "distribution_function.svg"), title="V, r = 3")

###############################################################################
# Moments by quadrature in phi against the exact Raney numbers.

params = raney.RaneyParams.model(r)
for k in range(6):
    print(k, raney.raney_number(params, k), raney.moment_quadrature(k, r))

###############################################################################
# The Stieltjes transform comes from an algebraic equation; the branch tending
# to 1 at infinity is the right one, and quadrature confirms it.

for z in (4.4, 8.0, 40.0):
    print(f"z = {z}: F = {raney.stieltjes(z, r):.15f}, quadrature {raney.stieltjes_quadrature(z, r):.15f}")
