"""
Gegenbauer polynomials and their sine series
============================================

On S^d the natural polynomials are C_n^lam with lam = (d-1)/2. Multiplied by
sin(t)^(2 lam - 1) they become a sine series in t, finite when lam is an
integer (odd d) and infinite otherwise.
"""
import math

import numpy as np

from spherekernels.special_fn import gegenbauer, gegenbauer_at_one, legendre, trig_expansion

x = np.linspace(-1, 1, 7)
print("C_4^1.5 on a grid:", np.round(gegenbauer(4, 1.5, x), 4))
print("bounded by C_4^1.5(1) =", gegenbauer_at_one(4, 1.5))

# integer order: a handful of sines reproduce the polynomial exactly
t = np.linspace(0.1, math.pi - 0.1, 5)
e = trig_expansion(6, 3)
print("\nlam = 3, n = 6 weights:", e.betas, " gamma =", e.gamma)
print("max discrepancy:", np.max(np.abs(e(t) - np.sin(t) ** 5 * gegenbauer(6, 3, np.cos(t)))))

# half-integer order: the series must be cut, and the cut costs accuracy near 0 and pi
for tol in (1e-3, 1e-5):
    e = trig_expansion(3, 0.5, tol=tol)
    err = max(abs(e(s) - legendre(3, math.cos(s))) for s in t)
    print(f"Legendre P_3, tail tol {tol:.0e}: {len(e.betas):7d} sines, max error {err:.2e}")
