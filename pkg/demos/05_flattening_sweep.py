"""
Sweeping latitude and flattening
================================

The command line tool tabulates holonomy, both precession models and the
parallelism residual over grids. Here the same rows are produced from Python
and the shape of the mismatch is examined as the ellipsoid departs from a
sphere.
"""

# %%
import math

import numpy as np

from pendulum_holonomy.cli import SWEEP_COLUMNS, sweep_row

theta0 = math.pi / 4
rows = np.array([sweep_row(theta0, a, 1.0, 1e-10, 4096) for a in np.linspace(1.0, 1.1, 11)])
print(" ".join(f"{c:>12s}" for c in SWEEP_COLUMNS[1:]))
for row in rows:
    print(" ".join(f"{v:12.7f}" for v in row[1:]))

# %%
# Near the sphere the residual grows linearly with the flattening eps = a - 1.
for eps in (1e-2, 1e-3, 1e-4):
    r = sweep_row(theta0, 1 + eps, 1.0, 1e-10, 4096)[-1]
    print(f"eps={eps:.0e}  residual/eps = {r / eps:.5f}")

# %%
# The same table from the shell, as CSV:
#
#   pendulum-holonomy sweep --lat 0.7853981634 --a-grid 1.0:1.1:11 --out sweep.csv
