"""
Parallel transport along a parallel
===================================

Integrate the parallel-transport equations for a vector along the 30 degree
parallel of the unit sphere and watch its angle to the curve tangent.
"""

# %%
import math

import numpy as np

from pendulum_holonomy import LatitudeCircle, parallel_transport, sphere

theta0 = math.pi / 6
circle = LatitudeCircle(sphere(), theta0)

# %%
# Start with the unit tangent. Its coordinate components are (0, 1/cos theta0).
trace = parallel_transport(circle, samples=9)
print("     t       V1        V2    angle to tangent    |V|")
for t, v1, v2, phi, n in zip(trace.t, trace.field.v1, trace.field.v2, trace.phi, trace.norm):
    print(f"{t:6.3f} {v1:9.5f} {v2:9.5f} {phi:12.6f} {n:12.9f}")

# %%
# The length never changes, while the angle grows at the constant rate
# sin(theta0) = 0.5. After the full loop it has grown by pi.
print(f"\nturn over the loop: {trace.phi[-1] - trace.phi[0]:.10f} (pi = {math.pi:.10f})")

# %%
# The field found numerically is the explicit one
#   V1 = -A sin(t/2) + B cos(t/2),  V2 = (B sin(t/2) + A cos(t/2)) / cos(theta0)
A, B = 0.6, -0.8
trace = parallel_transport(circle, (B, A / math.cos(theta0)), samples=65)
v1 = -A * np.sin(0.5 * trace.t) + B * np.cos(0.5 * trace.t)
v2 = (B * np.sin(0.5 * trace.t) + A * np.cos(0.5 * trace.t)) / math.cos(theta0)
print("largest deviation from the explicit field:",
      max(np.max(np.abs(trace.field.v1 - v1)), np.max(np.abs(trace.field.v2 - v2))))
