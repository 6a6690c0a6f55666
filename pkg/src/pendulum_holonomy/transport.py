"""Geodesic curvature, parallel transport and holonomy along parallels.

Orientation
-----------
Frames are built with the outward normal ``E3 = N`` and ``E2 = N ^ E1``, which
on these surfaces makes ``E2`` point north. Geodesic curvature and the angle
``phi`` between the curve tangent and a transported vector are measured with
the *opposite* orientation, i.e. positively from ``E1`` towards ``-E2``. With
that choice a northern parallel has negative geodesic curvature,
``phi' = -kappa_g |c'|`` holds along every parallel field, and the holonomy of
a northern parallel is positive (``2 pi sin theta0`` on the unit sphere).
Seen in the outward-oriented frame the transported vector turns by minus the
holonomy; :attr:`TransportTrace.frame_angle` reports that view.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .geometry import LatitudeCircle, SurfaceOfRevolution, check_latitude
from .numerics import IntegratorSpec, integrate, quadrature

__all__ = [
    "InsufficientSamples",
    "TangentField",
    "TransportTrace",
    "HolonomyReport",
    "ParallelismResidual",
    "geodesic_curvature_parallel",
    "geodesic_curvature",
    "holonomy_closed",
    "tangent_angle",
    "parallel_transport",
    "transport_angle_integral",
    "holonomy_numeric",
    "parallelism_residual",
    "principal_angle",
    "MIN_RESIDUAL_SAMPLES",
]

TWO_PI = 2.0 * math.pi
MIN_RESIDUAL_SAMPLES = 256


class InsufficientSamples(ValueError):
    pass


def principal_angle(angle: float) -> float:
    """Reduce ``angle`` to ``(-pi, pi]``."""
    r = math.remainder(angle, TWO_PI)
    return math.pi if r == -math.pi else r


@dataclass(frozen=True)
class TangentField:
    """A vector field along a curve, ``V = v1 X_u + v2 X_v`` sampled at ``t``."""

    t: np.ndarray
    v1: np.ndarray
    v2: np.ndarray

    def __post_init__(self):
        t, v1, v2 = (np.asarray(x, dtype=float) for x in (self.t, self.v1, self.v2))
        if not (t.ndim == 1 and t.shape == v1.shape == v2.shape):
            raise ValueError("t, v1, v2 must be 1-d arrays of equal length")
        if t.size > 1 and np.any(np.diff(t) <= 0):
            raise ValueError("t must be strictly increasing")
        if not (np.all(np.isfinite(v1)) and np.all(np.isfinite(v2))):
            raise ValueError("field components must be finite")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "v1", v1)
        object.__setattr__(self, "v2", v2)

    def __len__(self):
        return self.t.size

    def frame_components(self, circle: LatitudeCircle) -> tuple[np.ndarray, np.ndarray]:
        """Components ``(x, y)`` along ``(E1, E2)``."""
        return circle.to_frame(self.v1, self.v2)

    def metric_norm(self, circle: LatitudeCircle) -> np.ndarray:
        ff = circle.surface.first_fundamental_form(circle.theta0)
        return np.sqrt(ff.E * self.v1**2 + 2 * ff.F * self.v1 * self.v2 + ff.G * self.v2**2)


@dataclass(frozen=True)
class TransportTrace:
    field: TangentField
    phi: np.ndarray
    norm: np.ndarray

    @property
    def t(self) -> np.ndarray:
        return self.field.t

    @property
    def frame_angle(self) -> np.ndarray:
        """Angle of the vector from ``E1`` towards ``E2`` (outward orientation)."""
        return -self.phi

    @property
    def final(self) -> tuple[float, float]:
        return float(self.field.v1[-1]), float(self.field.v2[-1])

    @property
    def rotation(self) -> float:
        """Net turn of the vector relative to the frame, outward orientation."""
        return float(self.frame_angle[-1] - self.frame_angle[0])


@dataclass(frozen=True)
class HolonomyReport:
    a: float
    b: float
    theta0: float
    closed_form: float
    numeric: float
    angle_integral: float
    max_discrepancy: float

    @property
    def principal(self) -> float:
        return principal_angle(self.closed_form)

    @property
    def winding(self) -> int:
        """Whole turns removed when reducing ``closed_form`` to ``principal``."""
        return round((self.closed_form - self.principal) / TWO_PI)

    def as_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "theta0": self.theta0,
            "closed_form": self.closed_form,
            "numeric": self.numeric,
            "angle_integral": self.angle_integral,
            "max_discrepancy": self.max_discrepancy,
            "principal": self.principal,
            "winding": self.winding,
        }


@dataclass(frozen=True)
class ParallelismResidual:
    t: np.ndarray
    r1: np.ndarray
    r2: np.ndarray
    r1_sup: float = field(init=False)
    r2_sup: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "r1_sup", float(np.max(np.abs(self.r1))))
        object.__setattr__(self, "r2_sup", float(np.max(np.abs(self.r2))))

    @property
    def sup_norm(self) -> float:
        return max(self.r1_sup, self.r2_sup)


def geodesic_curvature_parallel(surface: SurfaceOfRevolution, theta0: float) -> float:
    """Constant geodesic curvature ``-tan(theta0) / |X_u|`` of a parallel."""
    theta0 = check_latitude(theta0)
    return -math.tan(theta0) / surface.meridian_speed(theta0)


def geodesic_curvature(circle: LatitudeCircle, t: float, h: float = 1e-4) -> float:
    """Geodesic curvature from its definition, evaluated numerically.

    ``E1`` is differentiated along the curve by central differences, projected
    on the tangent plane, and its component along the measuring direction
    ``-E2`` is divided by the speed.
    """
    e1_dot = (circle.frame(t + h).E1 - circle.frame(t - h).E1) / (2 * h)
    e1, e2, n = circle.frame(t)
    covariant = e1_dot - (e1_dot @ n) * n
    return float(-(e2 @ covariant) / np.linalg.norm(circle.velocity(t)))


def holonomy_closed(surface: SurfaceOfRevolution, theta0: float) -> float:
    """``2 pi a sin(theta0) / sqrt(a^2 sin^2 theta0 + b^2 cos^2 theta0)``, unreduced."""
    theta0 = check_latitude(theta0)
    return TWO_PI * surface.a * math.sin(theta0) / surface.meridian_speed(theta0)


def tangent_angle(circle: LatitudeCircle, v1, v2) -> np.ndarray:
    """Angle ``phi`` from the curve tangent to ``V``, measuring orientation.

    Values lie in ``(-pi, pi]``; unwrap sampled sequences before differencing.
    """
    x, y = circle.to_frame(v1, v2)
    return np.arctan2(-y, x)


def _connection_matrix(circle: LatitudeCircle) -> np.ndarray:
    # along a parallel u' = 0 and v' = 1, so dV^i/dt = -Gamma^i_{j2} V^j
    return circle.surface.christoffel(circle.theta0).as_array()[:, :, 1]


def parallel_transport(
    circle: LatitudeCircle,
    v0: Optional[Sequence[float]] = None,
    t_span: tuple[float, float] = (0.0, TWO_PI),
    spec: Optional[IntegratorSpec] = None,
    samples: Optional[int] = None,
    t_eval: Optional[Sequence[float]] = None,
) -> TransportTrace:
    """Transport a tangent vector along a parallel by integrating ``DV/dt = 0``.

    Parameters
    ----------
    circle : LatitudeCircle
    v0 : (float, float), optional
        Coordinate components ``(V1, V2)`` at ``t_span[0]``. Defaults to the
        unit tangent ``E1``.
    t_span : (float, float)
    spec : IntegratorSpec, optional
        Defaults to adaptive RK45 at 1e-10.
    samples : int, optional
        Number of equally spaced output samples including both ends. Ignored
        if ``t_eval`` is given; if both are omitted every integrator step is
        returned.
    t_eval : sequence of float, optional
        Explicit output times in ``(t0, t1]``.
    """
    if v0 is None:
        v0 = (0.0, 1.0 / circle.speed)
    m = _connection_matrix(circle)
    t0, t1 = t_span
    if t_eval is None and samples is not None:
        if samples < 2:
            raise ValueError("samples must be >= 2")
        t_eval = np.linspace(t0, t1, samples)[1:]

    def rhs(t, y):
        return -(m @ y)

    trace = integrate(rhs, v0, t_span, spec, t_eval=t_eval)
    tf = TangentField(trace.t, trace.y[:, 0], trace.y[:, 1])
    phi = np.unwrap(tangent_angle(circle, tf.v1, tf.v2))
    return TransportTrace(tf, phi, tf.metric_norm(circle))


def transport_angle_integral(
    circle: LatitudeCircle,
    phi0: float = 0.0,
    t_span: tuple[float, float] = (0.0, TWO_PI),
    n: int = 64,
) -> float:
    """``phi(t1) = phi0 - integral of kappa_g |c'| dt`` by composite Simpson."""
    k = geodesic_curvature_parallel(circle.surface, circle.theta0) * circle.speed
    return phi0 - quadrature(lambda t: np.full_like(t, k), t_span, n)


def holonomy_numeric(circle: LatitudeCircle, spec: Optional[IntegratorSpec] = None) -> HolonomyReport:
    """Holonomy of a parallel by closed form, angle integral and ODE transport.

    The ODE route carries ``E1`` and ``E2`` once around the loop together and
    reads the accumulated, unwrapped angle of each; ``numeric`` is their mean.
    """
    m = _connection_matrix(circle)
    mu, speed = circle.frame_coefficients()
    block = np.kron(np.eye(2), m)

    def rhs(t, y):
        return -(block @ y)

    trace = integrate(rhs, [0.0, 1.0 / speed, 1.0 / mu, 0.0], (0.0, TWO_PI), spec)
    turns = []
    for i in (0, 2):
        phi = np.unwrap(tangent_angle(circle, trace.y[:, i], trace.y[:, i + 1]))
        turns.append(phi[-1] - phi[0])
    numeric = 0.5 * (turns[0] + turns[1])
    closed = holonomy_closed(circle.surface, circle.theta0)
    integral = transport_angle_integral(circle)
    disc = max(
        abs(numeric - closed),
        abs(integral - closed),
        abs(turns[0] - turns[1]),
    )
    return HolonomyReport(
        a=circle.surface.a,
        b=circle.surface.b,
        theta0=circle.theta0,
        closed_form=closed,
        numeric=float(numeric),
        angle_integral=integral,
        max_discrepancy=float(disc),
    )


def parallelism_residual(circle: LatitudeCircle, field: TangentField) -> ParallelismResidual:
    """Left-hand sides of the parallel-field equations along a parallel.

    ``r1 = V1' + Gamma^1_22 V2`` and ``r2 = cos(theta0) V2' - sin(theta0) V1``
    (the second equation multiplied by ``cos theta0``). Derivatives come from
    second-order central differences of the samples.
    """
    if len(field) < MIN_RESIDUAL_SAMPLES:
        raise InsufficientSamples(
            f"need at least {MIN_RESIDUAL_SAMPLES} samples, got {len(field)}"
        )
    m = _connection_matrix(circle)
    d1 = np.gradient(field.v1, field.t, edge_order=2)
    d2 = np.gradient(field.v2, field.t, edge_order=2)
    r1 = d1 + m[0, 0] * field.v1 + m[0, 1] * field.v2
    r2 = math.cos(circle.theta0) * (d2 + m[1, 0] * field.v1 + m[1, 1] * field.v2)
    return ParallelismResidual(field.t, r1, r2)
