"""
The quadrature oracle
=====================

Every closed form in the package is checked against plain numerical
integration of the defining integral. This script shows the integrator on a
kink and on a fast oscillation, and compares with scipy when it is installed.
"""
import math

import numpy as np

from spherekernels.families import Askey
from spherekernels.quadrature import integrate, integrate_with_breakpoint

psi = Askey(2.0)
f = lambda t: psi(t) * np.sin(t)

plain = integrate(f, 0, math.pi, tol=1e-13, max_panels=10**6)
split = integrate_with_breakpoint(f, 0, math.pi, 2.0, tol=1e-13)
exact = 1 - 2 * (1 - math.cos(2.0)) / 4
print(f"Askey kink, no cut:   {plain.value:.15f}  panels={plain.subdivisions}")
print(f"Askey kink, cut at 2: {split.value:.15f}  panels={split.subdivisions}")
print(f"exact:                {exact:.15f}")

# cos(n t)^2 needs an initial partition that sees the oscillation
for n in (10, 100, 500):
    r = integrate(lambda t: np.cos(n * t) ** 2, 0, math.pi, min_panels=2 * n)
    print(f"n={n:3d}: {r.value - math.pi / 2:+.1e} off pi/2, {r.subdivisions} panels")

try:
    import scipy.integrate
except ImportError:
    pass
else:
    ref = scipy.integrate.quad(f, 0, math.pi, points=[2.0], epsabs=1e-14)[0]
    print("scipy quad agrees to", abs(ref - split.value))
