"""Harmonic field recovered from the step-response solution.

The time-domain field is self-similar in r / ct; a Laplace-type transform
in t gives back the harmonic field.  Two quadrature routes are compared
with the contour-integral answer.
"""

import math

from wedgediff.core import PolarPoint, WedgeProblem
from wedgediff.smirnov import TimePoint, phi_from_time, u_time
from wedgediff.sommerfeld import phi_total

prob = WedgeProblem(7 * math.pi / 8, 0.3 * math.pi, 2.0, "dirichlet")
print("u(r=1, theta=0, t) for t in 0.5..3:",
      [round(u_time(TimePoint(1.0, 0.0, t), prob), 4) for t in (0.5, 1.0, 1.5, 2.0, 3.0)])
for pt in (PolarPoint(1.0, 0.0), PolarPoint(2.0, -0.8), PolarPoint(3.0, 2.4)):
    ref = phi_total(pt, prob).total
    a = phi_from_time(pt, prob)
    b = phi_from_time(pt, prob, method="sdp")
    print(f"r={pt.r} theta={pt.theta:5.2f}  damped err {abs(a - ref):.1e}  sdp err {abs(b - ref):.1e}")
