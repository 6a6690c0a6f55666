"""Foucault pendulum in the rotating intrinsic frame of a parallel.

Units: bob mass 1, Earth angular speed 1 (one day is ``2 pi``). The bob moves
in the tangent plane with coordinates ``x`` along ``E1`` (east) and ``y`` along
``E2`` (north). In the small-amplitude limit

    x'' + alpha^2 x =  2 beta y'
    y'' + alpha^2 y = -2 beta x'

where ``alpha^2 = g / l`` and ``beta`` is the normal component of the rotation
rate. Gravity is taken exactly along ``-E3`` with the centrifugal term folded
into it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .geometry import LatitudeCircle, SurfaceOfRevolution, check_latitude
from .numerics import IntegratorSpec, integrate
from .transport import TangentField, holonomy_closed, parallelism_residual

__all__ = [
    "BETA_MODES",
    "DEFAULT_ALPHA",
    "MIN_SEPARATION",
    "BetaAlphaSeparationViolated",
    "DegenerateTrace",
    "PendulumConfig",
    "PendulumTrace",
    "PrecessionReport",
    "effective_beta",
    "rotate_static",
    "closed_form_solution",
    "closed_form_trace",
    "simulate",
    "plane_angles",
    "extract_precession",
    "oscillation_field",
    "compare_with_holonomy",
]

TWO_PI = 2.0 * math.pi
BETA_MODES = ("literal", "projected")
DEFAULT_ALPHA = 300.0
MIN_SEPARATION = 50.0


class BetaAlphaSeparationViolated(ValueError):
    """The pendulum is not fast enough compared with the rotation."""


class DegenerateTrace(ValueError):
    """No oscillation plane can be identified in a trace."""


def effective_beta(surface: SurfaceOfRevolution, theta0: float, beta_mode: str = "literal") -> float:
    """Rotation rate felt by the pendulum.

    ``"literal"`` uses ``sin(theta0)`` on any surface. ``"projected"`` uses the
    component of the unit rotation axis along the surface normal,
    ``a sin(theta0) / sqrt(a^2 sin^2 theta0 + b^2 cos^2 theta0)``. The two agree
    on a sphere.
    """
    theta0 = check_latitude(theta0)
    if beta_mode == "literal":
        return math.sin(theta0)
    if beta_mode == "projected":
        return float(surface.unit_normal(theta0, 0.0)[2])
    raise ValueError(f"beta_mode must be one of {BETA_MODES}, got {beta_mode!r}")


@dataclass(frozen=True)
class PendulumConfig:
    surface: SurfaceOfRevolution
    theta0: float
    alpha: float = DEFAULT_ALPHA
    beta_mode: str = "literal"
    plane: tuple[float, float] = (1.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "plane", (float(self.plane[0]), float(self.plane[1])))
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if self.plane == (0.0, 0.0):
            raise ValueError("initial plane (A, B) must be non-zero")
        beta = self.beta
        if self.alpha < MIN_SEPARATION * abs(beta):
            raise BetaAlphaSeparationViolated(
                f"alpha={self.alpha} must be at least {MIN_SEPARATION:g} * |beta| = {MIN_SEPARATION * abs(beta):g}"
            )

    @property
    def beta(self) -> float:
        return effective_beta(self.surface, self.theta0, self.beta_mode)

    @property
    def circle(self) -> LatitudeCircle:
        return LatitudeCircle(self.surface, self.theta0)

    @property
    def direction(self) -> np.ndarray:
        """Unit vector of the initial oscillation plane in (E1, E2) components."""
        d = np.array(self.plane)
        return d / np.linalg.norm(d)

    def as_dict(self) -> dict:
        return {
            "a": self.surface.a,
            "b": self.surface.b,
            "theta0": self.theta0,
            "alpha": self.alpha,
            "beta_mode": self.beta_mode,
            "plane": list(self.plane),
        }


@dataclass(frozen=True)
class PendulumTrace:
    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    xdot: np.ndarray
    ydot: np.ndarray
    alpha: float

    def energy(self) -> np.ndarray:
        """``(x'^2 + y'^2)/2 + alpha^2 (x^2 + y^2)/2``; the Coriolis term does no work."""
        return 0.5 * (self.xdot**2 + self.ydot**2) + 0.5 * self.alpha**2 * (self.x**2 + self.y**2)

    def columns(self) -> np.ndarray:
        return np.column_stack([self.t, self.x, self.y, self.xdot, self.ydot])


@dataclass(frozen=True)
class PrecessionReport:
    a: float
    b: float
    theta0: float
    alpha: float
    beta_mode: str
    method: str
    beta_used: float
    plane_rotation: float
    precession_per_loop: float
    holonomy_closed: float
    difference: float
    residual_sup: float
    residual_r2_sup: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def rotate_static(beta: float, t, x0, y0):
    """Apply the slow rotation ``R(beta t) = [[cos, sin], [-sin, cos]]`` to a static solution."""
    c, s = np.cos(beta * np.asarray(t)), np.sin(beta * np.asarray(t))
    return c * x0 + s * y0, -s * x0 + c * y0


def _default_static(config: PendulumConfig) -> Callable:
    n = config.direction

    def static(t):
        c = np.cos(config.alpha * np.asarray(t))
        return n[0] * c, n[1] * c

    return static


def closed_form_solution(config: PendulumConfig, t, static_solution: Optional[Callable] = None):
    """Small-rotation solution ``(x, y) = R(beta t) (x0, y0)``.

    ``static_solution(t) -> (x0, y0)`` is any motion of the non-rotating
    pendulum; the default swings with unit amplitude along the initial plane
    released from rest.
    """
    static = static_solution or _default_static(config)
    x0, y0 = static(t)
    return rotate_static(config.beta, t, x0, y0)


def closed_form_trace(config: PendulumConfig, t) -> PendulumTrace:
    """Closed-form motion with velocities, sampled at ``t``."""
    t = np.asarray(t, dtype=float)
    a, b = config.alpha, config.beta
    n = config.direction
    c, s = np.cos(a * t), np.sin(a * t)
    x, y = rotate_static(b, t, n[0] * c, n[1] * c)
    # d/dt [R(bt) n cos(at)] = R'(bt) n cos(at) - a R(bt) n sin(at), with R' = -b J R
    rx, ry = rotate_static(b, t, n[0] * s, n[1] * s)
    xdot = b * y - a * rx
    ydot = -b * x - a * ry
    return PendulumTrace(t, x, y, xdot, ydot, a)


def simulate(
    config: PendulumConfig,
    t_span: tuple[float, float] = (0.0, TWO_PI),
    spec: Optional[IntegratorSpec] = None,
    initial: Optional[tuple[float, float, float, float]] = None,
) -> PendulumTrace:
    """Integrate the coupled linear equations as written.

    ``initial`` is ``(x, y, xdot, ydot)`` at ``t_span[0]``; by default the bob
    starts at unit displacement along the initial plane, at rest.
    """
    a2 = config.alpha**2
    two_beta = 2.0 * config.beta
    if initial is None:
        n = config.direction
        initial = (n[0], n[1], 0.0, 0.0)

    def rhs(t, s):
        x, y, vx, vy = s
        return np.array([vx, vy, -a2 * x + two_beta * vy, -a2 * y - two_beta * vx])

    tr = integrate(rhs, initial, t_span, spec)
    return PendulumTrace(tr.t, tr.y[:, 0], tr.y[:, 1], tr.y[:, 2], tr.y[:, 3], config.alpha)


def plane_angles(
    trace: PendulumTrace,
    alpha: float,
    samples_per_period: int = 64,
    pulse: Optional[float] = None,
):
    """Oscillation-plane direction over consecutive windows of one period.

    The trace is resampled with cubic Hermite interpolation (positions and
    velocities), and in each window the principal axis of the ``(x, y)``
    scatter gives the plane direction. Angles are measured from ``E1`` towards
    ``E2`` and unwrapped modulo ``pi``.

    Parameters
    ----------
    trace : PendulumTrace
    alpha : float
        Pulse of the non-rotating pendulum.
    samples_per_period : int
    pulse : float, optional
        Pulse of the swing seen from a frame turning with the plane; windows
        last ``2 pi / pulse``. Defaults to ``alpha``.

    Returns
    -------
    centers, angles : ndarray
    """
    period = TWO_PI / (alpha if pulse is None else pulse)
    t0, t1 = float(trace.t[0]), float(trace.t[-1])
    n_win = int(math.floor((t1 - t0) / period * (1 + 1e-12)))
    if n_win < 2:
        raise DegenerateTrace("trace shorter than two oscillation periods")
    m = samples_per_period
    offsets = (np.arange(m) + 0.5) * period / m
    starts = t0 + period * np.arange(n_win)
    ts = (starts[:, None] + offsets[None, :]).ravel()
    x = CubicHermiteSpline(trace.t, trace.x, trace.xdot)(ts).reshape(n_win, m)
    y = CubicHermiteSpline(trace.t, trace.y, trace.ydot)(ts).reshape(n_win, m)
    sxx = (x * x).mean(axis=1)
    syy = (y * y).mean(axis=1)
    sxy = (x * y).mean(axis=1)
    power = sxx + syy
    if np.min(power) < 1e-24:
        raise DegenerateTrace("oscillation amplitude below 1e-12")
    # eigenvalue gap of the scatter matrix relative to its trace
    gap = np.hypot(sxx - syy, 2 * sxy) / power
    if np.min(gap) < 1e-6:
        raise DegenerateTrace("motion is circularly polarised; plane undefined")
    angles = 0.5 * np.unwrap(np.arctan2(2 * sxy, sxx - syy))
    return starts + 0.5 * period, angles


def _fit_line(centers, angles):
    slope, intercept = np.polyfit(centers - centers.mean(), angles, 1)
    return float(slope), float(intercept - slope * centers.mean())


def _swing_pulse(trace: PendulumTrace, alpha: float, rate: float, axis: float) -> float:
    # Undo the precession, project on the plane and read the mean angular
    # speed of the phase point (s, -s'/alpha) over the whole trace.
    q = trace.x + 1j * trace.y
    qdot = trace.xdot + 1j * trace.ydot
    turn = np.exp(-1j * (rate * trace.t + axis))
    s = (turn * q).real
    sdot = (turn * (qdot - 1j * rate * q)).real
    phase = np.unwrap(np.arctan2(-sdot / alpha, s))
    return abs(phase[-1] - phase[0]) / float(trace.t[-1] - trace.t[0])


def extract_precession(trace: PendulumTrace, alpha: float, samples_per_period: int = 64) -> float:
    """Signed rotation of the oscillation plane over the trace, in radians.

    Window angles from :func:`plane_angles` are fitted by a straight line and
    its slope is scaled to the full trace duration. Windows must span whole
    swings: the coupled system swings with pulse ``sqrt(alpha^2 + beta^2)``
    rather than ``alpha`` once the precession is factored out, and windows
    that are too short by that margin bias the fitted slope by about
    ``beta^2 / alpha^2``. So a first fit at ``alpha`` gives the rate and the
    plane, the pulse is then measured from the trace, and the fit is repeated
    with matching windows.

    A plane turning clockwise seen from outside the surface gives a negative
    value; on the unit sphere one day yields ``-2 pi sin(theta0)``.
    """
    centers, angles = plane_angles(trace, alpha, samples_per_period)
    rate, axis = _fit_line(centers, angles)
    pulse = _swing_pulse(trace, alpha, rate, axis)
    centers, angles = plane_angles(trace, alpha, samples_per_period, pulse)
    rate, _ = _fit_line(centers, angles)
    return rate * float(trace.t[-1] - trace.t[0])


def oscillation_field(config: PendulumConfig, samples: int = 4096) -> TangentField:
    """Tangent field traced by the oscillation plane, in coordinate components.

    Frame components follow the slow rotation of the initial plane ``(A, B)``;
    they are converted with ``E1 = X_v / (a cos theta0)`` and
    ``E2 = X_u / sqrt(a^2 sin^2 theta0 + b^2 cos^2 theta0)``.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    t = np.linspace(0.0, TWO_PI, samples)
    A, B = config.plane
    x, y = rotate_static(config.beta, t, A, B)
    v1, v2 = config.circle.from_frame(x, y)
    return TangentField(t, v1, v2)


def compare_with_holonomy(
    config: PendulumConfig,
    method: str = "closed",
    spec: Optional[IntegratorSpec] = None,
    trace: Optional[PendulumTrace] = None,
) -> PrecessionReport:
    """Pendulum precession over one day set against the holonomy of the parallel.

    With ``method="closed"`` the plane turns by exactly ``-2 pi beta``; with
    ``method="ode"`` the turn is measured from a simulated day (``trace`` may
    be supplied to reuse a simulation). ``difference`` is holonomy minus
    precession.
    """
    if method == "closed":
        rotation = -TWO_PI * config.beta
    elif method == "ode":
        if trace is None:
            trace = simulate(config, (0.0, TWO_PI), spec)
        rotation = extract_precession(trace, config.alpha)
    else:
        raise ValueError(f"method must be 'closed' or 'ode', got {method!r}")
    hol = holonomy_closed(config.surface, config.theta0)
    precession = -rotation
    res = parallelism_residual(config.circle, oscillation_field(config))
    return PrecessionReport(
        a=config.surface.a,
        b=config.surface.b,
        theta0=config.theta0,
        alpha=config.alpha,
        beta_mode=config.beta_mode,
        method=method,
        beta_used=config.beta,
        plane_rotation=float(rotation),
        precession_per_loop=float(precession),
        holonomy_closed=hol,
        difference=float(hol - precession),
        residual_sup=res.sup_norm,
        residual_r2_sup=res.r2_sup,
    )
