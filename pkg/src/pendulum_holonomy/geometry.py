"""Surfaces of revolution in geographic coordinates.

The surface with equatorial semiaxis ``a`` and polar semiaxis ``b`` is

    X(u, v) = (a cos u cos v, a cos u sin v, b sin u),

with ``u`` the latitude parameter and ``v`` the longitude. ``a == b == 1`` is
the unit sphere. The unit normal points outward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "EPS_POLE",
    "PoleProximity",
    "SurfaceOfRevolution",
    "FirstFundamentalForm",
    "ChristoffelSet",
    "LatitudeCircle",
    "FrameTriad",
    "sphere",
    "check_latitude",
]

EPS_POLE = 1e-6


class PoleProximity(ValueError):
    """Latitude too close to a pole for the geographic chart."""


def check_latitude(u: float) -> float:
    u = float(u)
    if not math.isfinite(u) or abs(u) >= math.pi / 2 - EPS_POLE:
        raise PoleProximity(f"latitude {u!r} is within {EPS_POLE} rad of a pole")
    return u


class FirstFundamentalForm(NamedTuple):
    E: float
    F: float
    G: float

    @property
    def det(self) -> float:
        return self.E * self.G - self.F * self.F

    def matrix(self) -> np.ndarray:
        return np.array([[self.E, self.F], [self.F, self.G]])


class ChristoffelSet(NamedTuple):
    """Christoffel symbols ``g{i}_{jk}`` for coordinates (1, 2) = (u, v).

    Only the six independent values are stored; symmetry in the lower
    indices is implied.
    """

    g1_11: float
    g1_12: float
    g1_22: float
    g2_11: float
    g2_12: float
    g2_22: float

    def as_array(self) -> np.ndarray:
        """Full table ``gamma[i, j, k]`` with 0-based indices."""
        g = np.empty((2, 2, 2))
        g[0] = [[self.g1_11, self.g1_12], [self.g1_12, self.g1_22]]
        g[1] = [[self.g2_11, self.g2_12], [self.g2_12, self.g2_22]]
        return g


class FrameTriad(NamedTuple):
    E1: np.ndarray
    E2: np.ndarray
    E3: np.ndarray

    def matrix(self) -> np.ndarray:
        """Rows are E1, E2, E3."""
        return np.vstack(self)


@dataclass(frozen=True)
class SurfaceOfRevolution:
    a: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0 and math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError(f"semiaxes must be positive and finite, got a={self.a}, b={self.b}")

    @property
    def is_sphere(self) -> bool:
        return self.a == self.b

    def meridian_speed(self, u: float) -> float:
        """``|X_u| = sqrt(a^2 sin^2 u + b^2 cos^2 u)``."""
        return math.sqrt((self.a * math.sin(u)) ** 2 + (self.b * math.cos(u)) ** 2)

    def position(self, u: float, v: float) -> np.ndarray:
        u = check_latitude(u)
        cu = math.cos(u)
        return np.array([self.a * cu * math.cos(v), self.a * cu * math.sin(v), self.b * math.sin(u)])

    def partials(self, u: float, v: float) -> tuple[np.ndarray, np.ndarray]:
        """Analytic ``(X_u, X_v)`` at ``(u, v)``."""
        u = check_latitude(u)
        su, cu, sv, cv = math.sin(u), math.cos(u), math.sin(v), math.cos(v)
        xu = np.array([-self.a * su * cv, -self.a * su * sv, self.b * cu])
        xv = np.array([-self.a * cu * sv, self.a * cu * cv, 0.0])
        return xu, xv

    def unit_normal(self, u: float, v: float) -> np.ndarray:
        """Outward unit normal, ``X_v ^ X_u`` normalised."""
        u = check_latitude(u)
        su, cu = math.sin(u), math.cos(u)
        n = np.array([self.b * cu * math.cos(v), self.b * cu * math.sin(v), self.a * su])
        return n / math.hypot(self.b * cu, self.a * su)

    def first_fundamental_form(self, u: float, v: float = 0.0) -> FirstFundamentalForm:
        xu, xv = self.partials(u, v)
        return FirstFundamentalForm(float(xu @ xu), float(xu @ xv), float(xv @ xv))

    def christoffel(self, u: float, v: float = 0.0) -> ChristoffelSet:
        """Closed-form Christoffel symbols at latitude ``u``.

        Only ``g1_11``, ``g1_22`` and ``g2_12`` are non-zero, and nothing
        depends on ``v``. For ``a == b`` the expressions reduce to the sphere
        values ``g1_22 = sin u cos u`` and ``g2_12 = -tan u``.
        """
        u = check_latitude(u)
        su, cu = math.sin(u), math.cos(u)
        a2, b2 = self.a * self.a, self.b * self.b
        e = a2 * su * su + b2 * cu * cu
        return ChristoffelSet(
            g1_11=su * cu * (a2 - b2) / e,
            g1_12=0.0,
            g1_22=a2 * su * cu / e,
            g2_11=0.0,
            g2_12=-math.tan(u),
            g2_22=0.0,
        )

    def christoffel_fd(self, u: float, v: float = 0.0, h: float = 1e-5) -> ChristoffelSet:
        """Christoffel symbols from central differences of the metric.

        Uses the coordinate formula
        ``G^i_jk = 1/2 g^il (d_j g_lk + d_k g_lj - d_l g_jk)`` with the metric
        assembled from the analytic partials. Independent of :meth:`christoffel`.
        """
        if not h > 0:
            raise ValueError("h must be positive")
        check_latitude(u)
        check_latitude(u - h)
        check_latitude(u + h)
        g = self.first_fundamental_form(u, v).matrix()
        dg = np.empty((2, 2, 2))  # dg[l] = d g / d x^l
        dg[0] = (self.first_fundamental_form(u + h, v).matrix() - self.first_fundamental_form(u - h, v).matrix()) / (2 * h)
        dg[1] = (self.first_fundamental_form(u, v + h).matrix() - self.first_fundamental_form(u, v - h).matrix()) / (2 * h)
        ginv = np.linalg.inv(g)
        # lowered[l, j, k] = d_j g_lk + d_k g_lj - d_l g_jk
        lowered = np.einsum("jlk->ljk", dg) + np.einsum("klj->ljk", dg) - dg
        gamma = 0.5 * np.einsum("il,ljk->ijk", ginv, lowered)
        idx = [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 0, 1), (1, 1, 1)]
        return ChristoffelSet(*(float(gamma[i]) for i in idx))

    def parallel(self, theta0: float) -> "LatitudeCircle":
        return LatitudeCircle(self, theta0)


def sphere() -> SurfaceOfRevolution:
    return SurfaceOfRevolution(1.0, 1.0)


@dataclass(frozen=True)
class LatitudeCircle:
    """The parallel ``c(t) = X(theta0, t)``, ``t`` in ``[0, 2 pi]``."""

    surface: SurfaceOfRevolution
    theta0: float

    def __post_init__(self):
        check_latitude(self.theta0)

    @property
    def speed(self) -> float:
        """``|c'(t)| = a cos theta0``, constant along the circle."""
        return self.surface.a * math.cos(self.theta0)

    @property
    def meridian_speed(self) -> float:
        return self.surface.meridian_speed(self.theta0)

    def point(self, t: float) -> np.ndarray:
        return self.surface.position(self.theta0, t)

    def velocity(self, t: float) -> np.ndarray:
        return self.surface.partials(self.theta0, t)[1]

    def frame(self, t: float) -> FrameTriad:
        """Intrinsic Frenet frame: unit tangent, ``N ^ E1``, outward normal ``N``."""
        e3 = self.surface.unit_normal(self.theta0, t)
        c_dot = self.velocity(t)
        e1 = c_dot / np.linalg.norm(c_dot)
        e2 = np.cross(e3, e1)
        return FrameTriad(e1, e2, e3)

    def frame_coefficients(self) -> tuple[float, float]:
        """Lengths ``(|X_u|, |X_v|)`` so that ``E2 = X_u/|X_u|`` and ``E1 = X_v/|X_v|``."""
        return self.meridian_speed, self.speed

    def to_frame(self, v1, v2):
        """Coordinate components ``(V1, V2)`` -> frame components ``(x, y)`` along (E1, E2)."""
        mu, speed = self.frame_coefficients()
        return np.multiply(v2, speed), np.multiply(v1, mu)

    def from_frame(self, x, y):
        """Frame components along (E1, E2) -> coordinate components ``(V1, V2)``."""
        mu, speed = self.frame_coefficients()
        return np.divide(y, mu), np.divide(x, speed)
