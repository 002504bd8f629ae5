"""
Oscillatory asymptotics of the rescaled polynomials
===================================================

Inside the zero region the rescaled polynomial F_n(n^{r-1} x) behaves like an
explicit envelope times cos(n f(phi) + g(phi)), where x = sigma(phi). Dividing
by the envelope leaves a curve that should track the cosine.
"""

from pathlib import Path

import numpy as np

from prodwishart import asymptotics as asy
from prodwishart.charpoly import PolySpec
from prodwishart.svgplot import plot_svg

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

# the preset window: r = 3, kappa = 2, nu = (2, 5), n = 150
table = asy.fig1_table()
dev = np.max(np.abs(table["normalized_poly"] - table["cosine_approximant"]))
print(f"max deviation on the window: {dev:.3f}")
plot_svg(table, str(out / "normalized_vs_cosine.svg"), x_key="phi",
         y_keys=["normalized_poly", "cosine_approximant"], title="n = 150")

###############################################################################
# The deviation shrinks with n. For r = 2 we follow it over a range of degrees
# on the middle of the interval.

spec = PolySpec(2, 0, [0])
phis = np.linspace(0.2, 0.8, 80) * asy.phi_max(2)
for n in (20, 40, 80, 160):
    fn = asy.normalized_poly_array(phis, spec, n)
    cn = np.cos(n * asy.phase_f(phis, 2) + asy.phase_g(phis, spec))
    print(f"n = {n:4d}  max |F~ - c| = {np.max(np.abs(fn - cn)):.4f}")
