import math

import pytest

from wedgediff.core import BC, WedgeProblem

TW = 7 * math.pi / 8


@pytest.fixture(params=[BC.DIRICHLET, BC.NEUMANN], ids=["D", "N"])
def bc(request):
    return request.param


def wedge(theta_i=0.0, k=1.0, bc=BC.DIRICHLET, theta_w=TW):
    return WedgeProblem(theta_w, theta_i, k, bc)
