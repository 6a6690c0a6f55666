"""
Pendulum and holonomy on an ellipsoid
=====================================

Keep the pendulum's rotation rate at sin(theta0), as on the sphere, but put it
on the oblate ellipsoid a=2, b=1. The swing plane now precesses less than the
holonomy of the parallel, and the field it traces is no longer parallel.
"""

# %%
import math

from pendulum_holonomy import (
    PendulumConfig,
    SurfaceOfRevolution,
    compare_with_holonomy,
    oscillation_field,
    parallelism_residual,
)

surface = SurfaceOfRevolution(2.0, 1.0)
theta0 = math.pi / 4

# %%
# "literal" keeps beta = sin(theta0). "projected" uses the component of the
# rotation axis along the surface normal instead.
for mode in ("literal", "projected"):
    rep = compare_with_holonomy(PendulumConfig(surface, theta0, beta_mode=mode))
    print(f"{mode:9s} beta={rep.beta_used:.7f} precession={rep.precession_per_loop:.7f} "
          f"holonomy={rep.holonomy_closed:.7f} difference={rep.difference:.7f}")

# %%
# How far is the literal oscillation field from parallel? The second
# transport equation misses by sin(theta0) |1/a - 1/|X_u||.
config = PendulumConfig(surface, theta0)
res = parallelism_residual(config.circle, oscillation_field(config))
expected = math.sin(theta0) * abs(1 / surface.a - 1 / surface.meridian_speed(theta0))
print(f"\nsup |r1| = {res.r1_sup:.7f}, sup |r2| = {res.r2_sup:.7f}, predicted |r2| = {expected:.7f}")
