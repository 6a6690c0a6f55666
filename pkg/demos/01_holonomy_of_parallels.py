"""
Holonomy of a parallel
======================

Carry a tangent vector once around a circle of latitude and compare where it
ends up with where it started. On the unit sphere the vector comes back
turned by ``2 pi sin(theta0)``; on an ellipsoid of revolution the meridian
speed enters the formula.
"""

# %%
# Three ways to get the same angle: the closed form, the integral of the
# geodesic curvature along the loop, and an actual numerical transport.
import math

import numpy as np

from pendulum_holonomy import LatitudeCircle, SurfaceOfRevolution, holonomy_numeric, sphere

for theta0 in (math.pi / 6, math.pi / 4, math.pi / 3):
    rep = holonomy_numeric(LatitudeCircle(sphere(), theta0))
    print(f"theta0={theta0:.4f}  closed={rep.closed_form:.10f}  "
          f"integral={rep.angle_integral:.10f}  ode={rep.numeric:.10f}")

# %%
# On the oblate ellipsoid a=2, b=1 the holonomy at 45 degrees exceeds pi.
# The unreduced value is the natural one; the principal value loses a turn.
rep = holonomy_numeric(LatitudeCircle(SurfaceOfRevolution(2.0, 1.0), math.pi / 4))
print(f"\nellipsoid a=2 b=1: holonomy {rep.closed_form:.7f}, principal {rep.principal:.7f}, winding {rep.winding}")

# %%
# Southern parallels give the opposite sign, and the equator gives nothing.
lats = np.linspace(-1.2, 1.2, 7)
hol = [holonomy_numeric(LatitudeCircle(sphere(), th)).numeric for th in lats]
print("\n theta0    holonomy   2 pi sin(theta0)")
for th, h in zip(lats, hol):
    print(f"{th:7.3f}  {h:10.6f}  {2 * math.pi * math.sin(th):10.6f}")
