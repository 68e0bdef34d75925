"""
Lifting circle coefficients to higher spheres
=============================================

The coefficients of a kernel on S^d can be assembled from its Fourier
coefficients on the circle. For odd d only finitely many are needed; for
even d the series is infinite and is truncated once its estimated tail is
small enough.
"""
import numpy as np

from spherekernels.families import Exponential, circle_coefficients
from spherekernels.schoenberg import coeff_lift, coeff_quadrature

psi = Exponential(1.0)
b1 = circle_coefficients(psi)

print(" d  n       lift              quadrature        terms   gap")
for d in (2, 3, 4, 5):
    for n in (0, 5, 20):
        r = coeff_lift(b1, n, d, tol=1e-10, full_output=True)
        q = coeff_quadrature(psi, n, d)
        print(f"{d:2d} {n:2d}  {r.value:.15f}  {q:.15f}  {r.mu_max:6d}  {abs(r.value - q):.1e}")

# on S^3 the lift is a two-term difference
n = np.arange(1, 6)
print("\nS^3 shortcut (n+1)/2 (b_n - b_{n+2}):", (n + 1) / 2 * (b1(n) - b1(n + 2)))
