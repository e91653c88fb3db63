"""Monte Carlo estimate of the diffracted amplitude from Brownian paths.

Each path starts at the observation point and stops on a wall; the GO
jumps it crosses on the way contribute to the amplitude u, with
Phi_diff = u exp(ikr).  Results are reproducible for a fixed seed.
Past a few thousand paths the error stops falling: the remaining bias
comes from the time step dt.
"""

import math

import numpy as np

from wedgediff.core import PolarPoint, WedgeProblem
from wedgediff.randomwalk import McConfig, estimate_crossing
from wedgediff.sommerfeld import phi_diff_sdc

prob = WedgeProblem(7 * math.pi / 8, 0.0, 5.0, "dirichlet")
pt = PolarPoint(1.0, math.pi / 4)
ref = phi_diff_sdc(pt, prob) * np.exp(-1j * prob.k * pt.r)
for n in (500, 2000, 8000):
    est = estimate_crossing(pt, prob, McConfig(dt=0.01, n_paths=n, seed=3))
    print(f"paths={n:5d}  u={complex(est.mean):.4f}  se={est.std_error:.4f}  |err|={abs(est.mean - ref):.4f}")
print(f"exact u = {complex(ref):.4f}")
