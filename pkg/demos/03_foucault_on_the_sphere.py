"""
Foucault pendulum on a spherical Earth
======================================

Units: one day is 2 pi and the pendulum pulse is alpha = 300. The swing
plane, seen in the local east/north frame, turns by -2 pi sin(theta0) per day,
which is minus the holonomy of the parallel.
"""

# %%
import math

from pendulum_holonomy import (
    IntegratorSpec,
    PendulumConfig,
    compare_with_holonomy,
    extract_precession,
    simulate,
    sphere,
)

config = PendulumConfig(sphere(), theta0=math.pi / 6, alpha=300.0)

# %%
# Integrate the linearised equations for a whole day. This takes a few seconds.
trace = simulate(config, (0.0, 2 * math.pi), IntegratorSpec.adaptive(1e-10))
print(f"{trace.t.size} samples, energy drift {abs(trace.energy()[-1] / trace.energy()[0] - 1):.1e}")

# %%
# Measure how far the swing plane turned, then set it against the holonomy.
turn = extract_precession(trace, config.alpha)
print(f"plane turned by {turn:.9f} rad (expected {-math.pi:.9f})")
report = compare_with_holonomy(config, "ode", trace=trace)
print(f"precession {report.precession_per_loop:.9f}, holonomy {report.holonomy_closed:.9f}, "
      f"difference {report.difference:.1e}")
