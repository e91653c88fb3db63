"""Diffraction coefficient from edge Green's functions for a rational wedge angle.

For 2 theta_w = 3 pi / 2 the embedding formula expresses D(theta, theta_i)
through directivities of edge sources; it agrees with the closed form to
rounding error and is symmetric under exchange of the two angles.
"""

import math

from wedgediff.core import WedgeProblem
from wedgediff.embedding import embed_diffraction_coefficient, rational_of
from wedgediff.gtd import diffraction_coefficient

prob = WedgeProblem(3 * math.pi / 4, 0.3 * math.pi)
print("angle:", rational_of(prob.theta_w))
for th, ti in [(0.1, 0.5), (-1.2, 0.9), (2.0, 0.3), (0.7, 2.1)]:
    e = embed_diffraction_coefficient(th, ti, prob)
    d = diffraction_coefficient(th, ti, prob)
    swap = embed_diffraction_coefficient(ti, th, prob)
    print(f"theta={th:5.2f} theta_i={ti:4.2f}  D={complex(e):.6f}  |D-ref|={abs(e - d):.1e}  |D-D_swap|={abs(e - swap):.1e}")
