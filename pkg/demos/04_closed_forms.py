"""
Closed-form coefficients on S^2
===============================

For the exponential kernel exp(-t/alpha) and the Askey kernel (1 - t/alpha)_+^2
the coefficients b_{n,2} are finite double sums over the power coefficients
of Legendre polynomials. The sums cancel heavily: carried out in double
precision they turn into noise around n = 30, which can easily be mistaken
for an oscillation of the coefficients. Carried out with enough digits they
agree with quadrature and stay positive.
"""
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from spherekernels.families import Askey, Exponential, askey_coeff2_closed, exp_coeff2_closed
from spherekernels.schoenberg import coeff_quadrature

here = os.path.dirname(os.path.abspath(__file__))
os.makedirs(os.path.join(here, "figures"), exist_ok=True)
n = np.arange(51)

fig, axes = plt.subplots(2, 3, figsize=(11, 6), sharex=True)
for row, (name, closed, family) in enumerate([("exponential", exp_coeff2_closed, Exponential),
                                              ("Askey", askey_coeff2_closed, Askey)]):
    for col, alpha in enumerate((1.0, 2.0, 3.0)):
        b = np.array([closed(alpha, k) for k in n])
        q = np.array([coeff_quadrature(family(alpha), k, 2, tol=1e-14) for k in n])
        gap = np.max(np.abs(b - q) / np.maximum(np.abs(q), 1e-12))
        print(f"{name:11s} alpha={alpha:g}: max relative gap to quadrature {gap:.1e}, min b {b.min():.2e}")
        ax = axes[row, col]
        ax.semilogy(n[1:], b[1:], ".", label="closed form")
        ax.set_title(f"{name}, alpha={alpha:g}")
axes[0, 0].legend()
fig.tight_layout()
fig.savefig(os.path.join(here, "figures", "closed_forms.png"), dpi=110)

# the same sums evaluated at about 16 significant digits
print("\n n   enough digits        16 digits")
for k in (10, 20, 30, 40, 50):
    print(f"{k:2d}  {exp_coeff2_closed(1.0, k):+.12e}  {exp_coeff2_closed(1.0, k, dps=16):+.12e}")
