"""Deterministic ODE integration and quadrature.

Two explicit Runge-Kutta schemes are provided: classical fixed-step RK4 and the
Dormand-Prince 5(4) embedded pair with automatic step-size control. Both work on
flat ``numpy`` state vectors and return every accepted step, so traces are
reproducible bit for bit for identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

__all__ = [
    "IntegratorSpec",
    "OdeTrace",
    "IntegrationError",
    "StepLimitExceeded",
    "NonFiniteState",
    "InvalidPanelCount",
    "integrate",
    "quadrature",
    "DEFAULT_STEP",
    "DEFAULT_TOL",
]

DEFAULT_STEP = 2.0 * math.pi / 4096
DEFAULT_TOL = 1e-10


class IntegrationError(RuntimeError):
    """Base class for numerical failures during integration."""


class StepLimitExceeded(IntegrationError):
    pass


class NonFiniteState(IntegrationError):
    pass


class InvalidPanelCount(ValueError):
    pass


@dataclass(frozen=True)
class IntegratorSpec:
    """Integrator choice and its controls.

    ``method`` is ``"rk4"`` (fixed step ``step``) or ``"rk45"`` (adaptive,
    controlled by ``rel_tol`` and ``abs_tol``).
    """

    method: str = "rk45"
    step: float = DEFAULT_STEP
    rel_tol: float = DEFAULT_TOL
    abs_tol: float = DEFAULT_TOL
    max_steps: int = 1_000_000

    def __post_init__(self):
        if self.method not in ("rk4", "rk45"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.method == "rk4" and not self.step > 0:
            raise ValueError("step must be positive")
        if self.method == "rk45":
            for name in ("rel_tol", "abs_tol"):
                tol = getattr(self, name)
                if not 0 < tol <= 1e-2:
                    raise ValueError(f"{name} must lie in (0, 1e-2], got {tol}")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")

    @classmethod
    def fixed(cls, step: float = DEFAULT_STEP, max_steps: int = 1_000_000) -> "IntegratorSpec":
        return cls(method="rk4", step=step, max_steps=max_steps)

    @classmethod
    def adaptive(cls, tol: float = DEFAULT_TOL, max_steps: int = 1_000_000) -> "IntegratorSpec":
        return cls(method="rk45", rel_tol=tol, abs_tol=tol, max_steps=max_steps)

    def as_dict(self) -> dict:
        if self.method == "rk4":
            return {"method": "rk4", "step": self.step, "max_steps": self.max_steps}
        return {
            "method": "rk45",
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "max_steps": self.max_steps,
        }


@dataclass(frozen=True)
class OdeTrace:
    """Accepted samples of an integration: ``t`` has shape (n,), ``y`` (n, d)."""

    t: np.ndarray
    y: np.ndarray

    @property
    def final(self) -> np.ndarray:
        return self.y[-1]

    def __len__(self):
        return len(self.t)


# Dormand-Prince 5(4) tableau
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_DP_A = [np.array(row, dtype=float) for row in _DP_A]
_DP_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
# difference between the 5th and embedded 4th order weights
_DP_E = _DP_B - np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)


def _checked(rhs, t, y):
    dy = np.asarray(rhs(t, y), dtype=float)
    if not np.all(np.isfinite(dy)):
        raise NonFiniteState(f"right-hand side returned non-finite values at t={t!r}")
    return dy


def _rk4_step(rhs, t, y, h):
    k1 = _checked(rhs, t, y)
    k2 = _checked(rhs, t + 0.5 * h, y + 0.5 * h * k1)
    k3 = _checked(rhs, t + 0.5 * h, y + 0.5 * h * k2)
    k4 = _checked(rhs, t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _dp_step(rhs, t, y, h, k1):
    """One Dormand-Prince step; returns (y_new, error_vector, k7)."""
    k = np.empty((7, y.size))
    k[0] = k1
    for i in range(1, 7):
        ys = y + h * (_DP_A[i] @ k[:i])
        k[i] = _checked(rhs, t + _DP_C[i] * h, ys)
    # the 7th stage is evaluated at y_new (FSAL)
    return ys, h * (_DP_E @ k), k[6]


def _initial_step(rhs, t0, y0, f0, rtol, atol, span):
    # Hairer, Norsett & Wanner, Solving ODEs I, sec. II.4
    scale = atol + rtol * np.abs(y0)
    d0 = np.max(np.abs(y0) / scale)
    d1 = np.max(np.abs(f0) / scale)
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h0 = min(h0, span)
    f1 = _checked(rhs, t0 + h0, y0 + h0 * f0)
    d2 = np.max(np.abs(f1 - f0) / scale) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1 / 5)
    return min(100 * h0, h1, span)


def _stops(t0, t1, t_eval):
    if t_eval is None:
        return [t1]
    stops = [float(s) for s in t_eval]
    if any(b <= a for a, b in zip(stops, stops[1:])):
        raise ValueError("t_eval must be strictly increasing")
    if stops and (stops[0] <= t0 or stops[-1] > t1):
        raise ValueError("t_eval must lie in (t0, t1]")
    if not stops or stops[-1] < t1:
        stops.append(t1)
    return stops


def integrate(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0: Sequence[float],
    t_span: tuple[float, float],
    spec: Optional[IntegratorSpec] = None,
    t_eval: Optional[Sequence[float]] = None,
) -> OdeTrace:
    """Integrate ``y' = rhs(t, y)`` from ``t_span[0]`` to ``t_span[1]``.

    Parameters
    ----------
    rhs : callable
        Right-hand side ``f(t, y)`` returning an array shaped like ``y``.
    y0 : array_like
        Initial state.
    t_span : (float, float)
        Start and end time, ``t1 > t0``.
    spec : IntegratorSpec, optional
        Defaults to adaptive RK45 at ``rel_tol = abs_tol = 1e-10``.
    t_eval : sequence of float, optional
        Output times in ``(t0, t1]``. Steps are shortened to land on them
        exactly and only these samples (plus ``t0`` and ``t1``) are kept.
        Without it every accepted step is recorded.

    Returns
    -------
    OdeTrace
        Samples whose last entry is at ``t1``.

    Raises
    ------
    StepLimitExceeded
        More than ``spec.max_steps`` steps (accepted or rejected) were needed.
    NonFiniteState
        ``rhs`` produced NaN or infinity.
    """
    spec = spec or IntegratorSpec()
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 > t0:
        raise ValueError("t_span must satisfy t1 > t0")
    y = np.array(y0, dtype=float).ravel()
    if not np.all(np.isfinite(y)):
        raise NonFiniteState("initial state is not finite")
    stops = _stops(t0, t1, t_eval)
    keep_all = t_eval is None

    ts = [t0]
    ys = [y.copy()]
    t = t0
    n_steps = 0

    if spec.method == "rk4":
        for stop in stops:
            n = max(1, math.ceil((stop - t) / spec.step - 1e-9))
            h = (stop - t) / n
            start = t
            for i in range(1, n + 1):
                n_steps += 1
                if n_steps > spec.max_steps:
                    raise StepLimitExceeded(f"exceeded {spec.max_steps} steps before t={t1}")
                y = _rk4_step(rhs, t, y, h)
                t = stop if i == n else start + i * h
                if keep_all:
                    ts.append(t)
                    ys.append(y)
            if not keep_all:
                ts.append(t)
                ys.append(y)
        return OdeTrace(np.array(ts), np.array(ys))

    rtol, atol = spec.rel_tol, spec.abs_tol
    f = _checked(rhs, t, y)
    h = _initial_step(rhs, t, y, f, rtol, atol, t1 - t0)
    stop_iter = iter(stops)
    stop = next(stop_iter)
    while True:
        n_steps += 1
        if n_steps > spec.max_steps:
            raise StepLimitExceeded(f"exceeded {spec.max_steps} steps before t={t1}")
        remaining = stop - t
        hit = h >= remaining * (1 - 1e-12)
        step = remaining if hit else h
        y_new, err, f_new = _dp_step(rhs, t, y, step, f)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err_norm = float(np.max(np.abs(err) / scale))
        if err_norm <= 1.0:
            t = stop if hit else t + step
            y, f = y_new, f_new
            if keep_all or hit:
                ts.append(t)
                ys.append(y)
            if hit:
                if t >= t1:
                    break
                stop = next(stop_iter)
            factor = 5.0 if err_norm == 0 else min(5.0, max(0.2, 0.9 * err_norm ** -0.2))
            # a step clipped to a stop says little about the natural step size
            h = max(h, step * factor) if hit else step * factor
        else:
            h = step * max(0.2, 0.9 * err_norm ** -0.2)
        if t + h == t:
            raise IntegrationError(f"step size underflow at t={t!r}")
    return OdeTrace(np.array(ts), np.array(ys))


def quadrature(f: Callable[[np.ndarray], np.ndarray], t_span: tuple[float, float], n: int = 64) -> float:
    """Composite Simpson rule with ``n`` (even, >= 2) panels.

    ``f`` is called once on the full node array; scalar functions are
    broadcast.
    """
    if n < 2 or n % 2:
        raise InvalidPanelCount(f"panel count must be even and >= 2, got {n}")
    t0, t1 = t_span
    x = np.linspace(t0, t1, n + 1)
    fx = np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)
    h = (t1 - t0) / n
    return float(h / 3.0 * (fx[0] + fx[-1] + 4.0 * fx[1:-1:2].sum() + 2.0 * fx[2:-1:2].sum()))
