import math
from functools import lru_cache

import numpy as np
import pytest

from pendulum_holonomy import IntegratorSpec, PendulumConfig, SurfaceOfRevolution, simulate

TWO_PI = 2 * math.pi


@lru_cache(maxsize=None)
def simulated_day(a, b, theta0, alpha=300.0, beta_mode="literal", tol=1e-10):
    """One simulated day, shared between test modules (each takes a few seconds)."""
    config = PendulumConfig(SurfaceOfRevolution(a, b), theta0, alpha, beta_mode)
    return config, simulate(config, (0.0, TWO_PI), IntegratorSpec.adaptive(tol))


def exact_pendulum(config, t):
    """Exact solution of the coupled linear system released at rest from the initial plane.

    q = x + i y solves q'' + 2 i beta q' + alpha^2 q = 0, so
    q = exp(-i beta t) (P exp(i w t) + Q exp(-i w t)), w = sqrt(alpha^2 + beta^2),
    with P + Q = q(0) and P - Q = beta q(0) / w from q'(0) = 0.
    """
    beta, alpha = config.beta, config.alpha
    w = math.hypot(alpha, beta)
    q0 = complex(*config.direction)
    p = 0.5 * q0 * (1 + beta / w)
    q = 0.5 * q0 * (1 - beta / w)
    z = np.exp(-1j * beta * t) * (p * np.exp(1j * w * t) + q * np.exp(-1j * w * t))
    return z.real, z.imag


@pytest.fixture
def ellipsoid():
    return SurfaceOfRevolution(2.0, 1.0)


@pytest.fixture
def unit_sphere():
    return SurfaceOfRevolution(1.0, 1.0)
