"""
Checking positive definiteness two ways
=======================================

A kernel is positive definite on S^d when its Schoenberg coefficients are
nonnegative. A Gram matrix on a point set gives an independent, weaker check.
"""
import numpy as np

from spherekernels.families import Custom, Exponential, compute_sequence
from spherekernels.schoenberg import fibonacci_sphere, gram_check, pd_verdict, random_sphere_points

pts = fibonacci_sphere(200)
for name, psi in [("exp(-t)", Exponential(1.0)), ("cos(3t)", Custom(lambda t: np.cos(3 * t)))]:
    seq = compute_sequence(psi, 2, 30)
    print(f"{name:8s} coefficients: {pd_verdict(seq)}, Gram min eigenvalue {gram_check(psi, pts):+.3e}")

# a kernel can pass on S^2 but fail on a higher-dimensional sphere
psi = Custom(lambda t: np.clip(1 - t / 2.0, 0, None))  # Askey with tau = 1
for d in (1, 2, 3):
    seq = compute_sequence(psi, d, 60)
    print(f"(1 - t/2)_+ on S^{d}: {pd_verdict(seq)}, min b = {seq.coeffs.min():+.2e}, "
          f"Gram {gram_check(psi, random_sphere_points(300, d, seed=3)):+.2e}")
