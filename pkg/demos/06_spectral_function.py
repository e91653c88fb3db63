"""The spectral function s(z), its Wiener-Hopf factorised form and the Green operator.

s(z) can be rebuilt from the Wiener-Hopf factors and, for Im z > 0, from
the total field on a single ray through the operator S_0.
"""

import math

import numpy as np

from wedgediff.core import WedgeProblem, spectral_s
from wedgediff.harness import choose_ray, green_operator_s0
from wedgediff.wienerhopf import wh_spectral

prob = WedgeProblem(3 * math.pi / 4, 0.3 * math.pi, 1.0, "dirichlet")
z = np.array([0.4 + 0.8j, -1.0 + 0.7j, 2.0 + 0.8j])
print("|s - s_WH| =", np.abs(spectral_s(z, prob) - wh_spectral(z, prob)))
for zz in z:
    th = choose_ray(complex(zz), prob)
    s_op = 0.5 * green_operator_s0(complex(zz), prob, theta_ray=th)
    print(f"z={zz}  ray={th:6.3f}  |S_0/2 - s| = {abs(s_op - spectral_s(zz, prob)):.1e}")
