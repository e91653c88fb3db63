"""Ray approximations against the exact field.

GTD blows up on the shadow boundaries; the uniform version stays bounded and
converges to the exact answer as kr grows.
"""

import math

import numpy as np

from wedgediff.core import PolarPoint, WedgeProblem, go_discontinuities
from wedgediff.gtd import phi_gtd, phi_utd
from wedgediff.sommerfeld import phi_total

prob = WedgeProblem(3 * math.pi / 4, 0.3 * math.pi, 1.0, "dirichlet")
sb = float(np.asarray(go_discontinuities(prob))[0])

for kr in (2.0, 5.0, 20.0):
    errs_g, errs_u = [], []
    for off in (0.3, 0.1, 0.03, 0.01):
        pt = PolarPoint(kr, sb + off)
        ref = phi_total(pt, prob).total
        errs_g.append(abs(phi_gtd(pt, prob) - ref))
        errs_u.append(abs(phi_utd(pt, prob) - ref))
    print(f"kr = {kr:5.1f}  GTD err {np.round(errs_g, 4)}  UTD err {np.round(errs_u, 4)}")
