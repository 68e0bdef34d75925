"""
How flat can a locally supported kernel be at the origin?
=========================================================

For kernels on S^d that vanish beyond a cutoff c the curvature -psi''(0) cannot
be arbitrarily small. A short Schoenberg expansion gives a lower bound, a
Bessel zero gives an upper bound.
"""
import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from spherekernels.curvature import beta_interval, bounds_table, lower_bound, psi_beta_sequence
from spherekernels.schoenberg import curvature_from_coeffs

here = os.path.dirname(os.path.abspath(__file__))
os.makedirs(os.path.join(here, "figures"), exist_ok=True)

fig, ax = plt.subplots(figsize=(6, 4))
for d in (2, 3, 5):
    rows = bounds_table(d)
    c = np.array([r.c for r in rows])
    ax.plot(c, [r.upper for r in rows], label=f"upper, d={d}")
    ax.plot(c, [r.lower for r in rows], "--", label=f"lower, d={d}")
ax.set_ylim(0, 8)
ax.set_xlabel("c")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(os.path.join(here, "figures", "curvature_bounds.png"), dpi=110)

row = bounds_table(2, [math.pi])[0]
print(f"d=2, c=pi: lower {row.lower}, upper {row.upper:.6f}")

# the lowest admissible b_2 attains the three-coefficient bound
d, c = 2, 1.2
lo, hi = beta_interval(d, c)
for beta in np.linspace(lo, hi, 4):
    print(f"beta={beta:.4f}: -psi''(0) = {curvature_from_coeffs(psi_beta_sequence(d, c, beta)):.6f}")
print("lower bound:", lower_bound(d, c))
