"""Exact field around a right-angled wedge: contour integral versus eigenfunction series.

The total field is the geometrical-optics part plus a diffracted wave that
the steepest-descent integral computes directly.  The eigenfunction series
is an independent route to the same number.
"""

import math

import numpy as np

from wedgediff.core import PolarPoint, WedgeProblem, go_discontinuities
from wedgediff.series import phi_series
from wedgediff.sommerfeld import phi_total

prob = WedgeProblem(theta_w=3 * math.pi / 4, theta_i=0.3 * math.pi, k=1.0, bc="dirichlet")
print("GO discontinuities at theta/pi =", np.round(np.asarray(go_discontinuities(prob)) / math.pi, 4))

print(f"{'theta/pi':>9} {'|GO|':>8} {'|diff|':>8} {'|total|':>8} {'series gap':>11}")
for th in np.linspace(-0.74, 0.74, 9) * math.pi:
    pt = PolarPoint(5.0, float(th))
    res = phi_total(pt, prob)
    gap = abs(res.total - phi_series(pt, prob))
    print(f"{th / math.pi:9.3f} {abs(res.go):8.4f} {abs(res.diffracted):8.4f} {abs(res.total):8.4f} {gap:11.2e}")
