"""Exponential and Askey kernels and their closed-form sphere coefficients.

The 2-Schoenberg coefficient of a kernel can be written through the
power-basis form of the Legendre polynomial,

    b_{n,2} = (n + 1/2) sum_m c_m int_0^pi cos(t)^m sin(t) psi(t) dt,

where ``c_m`` are the coefficients of ``P_n``. For the exponential and
the Askey (``tau = 2``) kernels each moment has a finite closed form, so
``b_{n,2}`` is a finite double sum. The ``c_m`` are exact rationals of
size about ``2^n`` with alternating signs, and the sum cancels down to a
value of order ``1/n^2``: in double precision the result is noise from
``n ~ 30`` on. The sums are therefore carried out in :mod:`mpmath` with
a working precision that grows with ``n``; binomials stay exact. Each
call owns a private :class:`mpmath.MPContext`, so coefficients can be
computed from several threads at once.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import mpmath as mp
import numpy as np

from .schoenberg import (
    Method,
    SchoenbergSequence,
    coeff_fourier_1,
    lift_sequence,
    quadrature_sequence,
)
from .special_fn import legendre_power_coeffs_exact

__all__ = [
    "Kernel",
    "Exponential",
    "Askey",
    "Custom",
    "evaluate",
    "exp_cos_power_integral",
    "exp_moment",
    "exp_coeff2_closed",
    "exp_coeff1_closed",
    "askey_block_integrals",
    "askey_moment",
    "askey_coeff2_closed",
    "askey_coeff1_closed",
    "closed_coeff2",
    "circle_coefficients",
    "compute_sequence",
]

_THETA_SLACK = 1e-12


class Kernel:
    """Isotropic correlation function ``psi`` on ``[0, pi]`` with ``psi(0) = 1``."""

    breakpoints: tuple = ()

    def _eval(self, theta: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        if np.any(theta < -_THETA_SLACK) or np.any(theta > math.pi + _THETA_SLACK):
            raise ValueError("kernel argument must lie in [0, pi]")
        out = self._eval(np.clip(theta, 0.0, math.pi))
        return float(out) if out.ndim == 0 else out


def evaluate(kernel: Kernel, theta):
    """Functional spelling of ``kernel(theta)``."""
    return kernel(theta)


@dataclass(frozen=True)
class Exponential(Kernel):
    """``psi(theta) = exp(-theta / alpha)``."""

    alpha: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")

    def _eval(self, theta):
        return np.exp(-theta / self.alpha)


@dataclass(frozen=True)
class Askey(Kernel):
    """``psi(theta) = (1 - theta / alpha)_+^tau``; locally supported when ``alpha < pi``."""

    alpha: float = 1.0
    tau: float = 2.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")

    @property
    def breakpoints(self) -> tuple:
        return (min(self.alpha, math.pi),)

    @property
    def locally_supported(self) -> bool:
        return self.alpha < math.pi

    def _eval(self, theta):
        return np.clip(1.0 - theta / self.alpha, 0.0, None) ** self.tau


@dataclass(frozen=True)
class Custom(Kernel):
    """User-supplied ``psi``; ``func`` must be vectorised over numpy arrays."""

    func: Callable = field(compare=False)
    breakpoints: tuple = ()
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(float(b) for b in self.breakpoints))
        at_zero = float(np.asarray(self.func(np.array([0.0])), dtype=float)[0])
        if abs(at_zero - 1.0) > 1e-9:
            raise ValueError(f"custom kernel must satisfy psi(0) = 1, got {at_zero!r}")

    def _eval(self, theta):
        return np.asarray(self.func(theta), dtype=float)

    @classmethod
    def from_table(cls, theta, values, name: str = "table") -> "Custom":
        """Piecewise-linear kernel through samples covering ``[0, pi]``."""
        theta = np.asarray(theta, dtype=float)
        values = np.asarray(values, dtype=float)
        if theta.ndim != 1 or theta.shape != values.shape or theta.size < 2:
            raise ValueError("table needs two equal-length columns with at least two rows")
        if np.any(np.diff(theta) <= 0):
            raise ValueError("table abscissae must be strictly increasing")
        if abs(theta[0]) > _THETA_SLACK or theta[-1] < math.pi - 1e-9:
            raise ValueError("table must cover [0, pi]")
        return cls(lambda t: np.interp(t, theta, values), breakpoints=tuple(theta[1:-1]), name=name)


# Exponential family -------------------------------------------------------

def _dps(n: int) -> int:
    # the power-basis sum cancels about 0.36 n + 2 log10(n) digits
    return 30 + (n + 1) // 2


def _context(ctx=None, dps: int = 30):
    if ctx is not None:
        return ctx
    ctx = mp.MPContext()
    ctx.dps = dps
    return ctx


def _mpf(ctx, q):
    return ctx.mpf(q.numerator) / q.denominator


def exp_cos_power_integral(alpha: float, p: int, ctx=None):
    """``int_0^pi exp(-t/alpha) cos(t)^p dt`` as an mpmath number.

    Expands ``cos^p`` into single cosines; each integrates to
    ``alpha (1 - (-1)^k e^{-pi/alpha}) / (1 + k^2 alpha^2)``.
    """
    ctx = _context(ctx, _dps(p))
    a = ctx.mpf(alpha)
    e = ctx.exp(-ctx.pi / a)
    total = ctx.mpf(0)
    for j in range(p + 1):
        k = p - 2 * j
        sign = 1 if k % 2 == 0 else -1
        total += math.comb(p, j) * a * (1 - sign * e) / (1 + k * k * a * a)
    return total / ctx.mpf(2) ** p


def exp_moment(alpha: float, m: int, ctx=None):
    """``int_0^pi exp(-t/alpha) cos(t)^m sin(t) dt`` via one integration by parts."""
    ctx = _context(ctx, _dps(m))
    a = ctx.mpf(alpha)
    e = ctx.exp(-ctx.pi / a)
    boundary = (1 + (-1) ** m * e) / (m + 1)
    return boundary - exp_cos_power_integral(alpha, m + 1, ctx) / (a * (m + 1))


def _exp_bracket_moment(ctx, a, e, m: int):
    # merged even/odd finite sums for the same moment as exp_moment
    two_m = ctx.mpf(2) ** m
    if m % 2 == 0:
        s = ctx.fsum(ctx.mpf(math.comb(m + 1, (m - 2 * k) // 2)) / ((2 * k + 1) ** 2 * a * a + 1)
                     for k in range(m // 2 + 1))
        return (1 + e) / ((m + 1) * two_m) * (two_m - s)
    s = ctx.fsum(ctx.mpf(math.comb(m + 1, (m - 2 * k + 1) // 2)) / (4 * k * k * a * a + 1)
                 for k in range(1, (m + 1) // 2 + 1))
    centre = ctx.mpf(math.comb(m + 1, (m + 1) // 2)) / 2
    return (1 - e) / ((m + 1) * two_m) * (two_m - centre - s)


def exp_coeff2_closed(alpha: float, n: int, dps: Optional[int] = None) -> float:
    """Closed-form ``b_{n,2}`` of ``exp(-theta/alpha)`` as a finite double sum."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    n = operator.index(n)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    coeffs = legendre_power_coeffs_exact(n)
    ctx = _context(dps=dps or _dps(n))
    a = ctx.mpf(alpha)
    e = ctx.exp(-ctx.pi / a)
    total = ctx.fsum(_mpf(ctx, c) * _exp_bracket_moment(ctx, a, e, m)
                     for m, c in enumerate(coeffs) if c != 0)
    return float((2 * n + 1) * total / 2)


def exp_coeff1_closed(alpha: float, n):
    """Circle coefficients of ``exp(-theta/alpha)``; ``n`` may be an integer array.

    ``b_0 = alpha (1 - e^{-pi/alpha}) / pi`` and, for ``n >= 1``,
    ``b_n = 2 alpha (1 - (-1)^n e^{-pi/alpha}) / (pi (1 + n^2 alpha^2))``.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    n = np.asarray(n)
    e = math.exp(-math.pi / alpha)
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    out = 2.0 * alpha * (1.0 - sign * e) / (math.pi * (1.0 + (n * alpha) ** 2))
    out = np.where(n == 0, alpha * (1.0 - e) / math.pi, out)
    return float(out) if out.ndim == 0 else out


# Askey family (tau = 2) ---------------------------------------------------

def _check_askey_alpha(alpha: float):
    if not 0 < alpha <= math.pi:
        raise ValueError("closed forms for the Askey kernel need 0 < alpha <= pi")


def askey_block_integrals(alpha: float, m: int, ctx=None):
    """``(I1, I2, I3)`` with ``Ik = int_0^alpha t^(k-1) cos(t)^m sin(t) dt``.

    Returned as mpmath numbers. Each follows from integration by parts
    plus the expansion of ``cos^(m+1)`` into single cosines.
    """
    _check_askey_alpha(alpha)
    ctx = _context(ctx, _dps(m))
    a = ctx.mpf(alpha)
    cpow = ctx.cos(a) ** (m + 1)
    i1 = (1 - cpow) / (m + 1)
    p = m + 1
    # int_0^a cos^p and int_0^a t cos^p, term by term
    lin = ctx.mpf(0)
    quad = ctx.mpf(0)
    for j in range(p + 1):
        k = p - 2 * j
        w = ctx.mpf(math.comb(p, j))
        if k == 0:
            lin += w * a
            quad += w * a * a / 2
        else:
            lin += w * ctx.sin(k * a) / k
            quad += w * (a * ctx.sin(k * a) / k + (ctx.cos(k * a) - 1) / (k * k))
    scale = ctx.mpf(2) ** p
    lin /= scale
    quad /= scale
    i2 = (-a * cpow + lin) / (m + 1)
    i3 = (-a * a * cpow + 2 * quad) / (m + 1)
    return i1, i2, i3


def askey_moment(alpha: float, m: int, assemble: str = "merged", ctx=None):
    """``int_0^alpha (1 - t/alpha)^2 cos(t)^m sin(t) dt``.

    ``assemble="blocks"`` combines ``I1 - 2 I2/alpha + I3/alpha^2``;
    ``"merged"`` uses the simplified finite sum in which the
    ``cos(alpha)^(m+1)`` terms have cancelled analytically.
    """
    _check_askey_alpha(alpha)
    ctx = _context(ctx, _dps(m))
    a = ctx.mpf(alpha)
    if assemble == "blocks":
        i1, i2, i3 = askey_block_integrals(alpha, m, ctx)
        return i1 - 2 * i2 / a + i3 / (a * a)
    if assemble != "merged":
        raise ValueError("assemble must be 'merged' or 'blocks'")
    s = ctx.fsum(math.comb(m + 1, k) * (ctx.cos((m - 2 * k + 1) * a) - 1) / (m - 2 * k + 1) ** 2
                 for k in range(m // 2 + 1))
    out = ctx.mpf(1) / (m + 1) + s / ((m + 1) * a * a * ctx.mpf(2) ** (m - 1))
    if m % 2 == 1:
        out -= ctx.mpf(math.comb(m + 1, (m + 1) // 2)) / ((m + 1) * ctx.mpf(2) ** (m + 1))
    return out


def askey_coeff2_closed(alpha: float, n: int, assemble: str = "merged",
                        dps: Optional[int] = None) -> float:
    """Closed-form ``b_{n,2}`` of ``(1 - theta/alpha)_+^2`` for ``0 < alpha <= pi``."""
    _check_askey_alpha(alpha)
    n = operator.index(n)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    coeffs = legendre_power_coeffs_exact(n)
    ctx = _context(dps=dps or _dps(n) + 5)
    total = ctx.fsum(_mpf(ctx, c) * askey_moment(alpha, m, assemble, ctx)
                     for m, c in enumerate(coeffs) if c != 0)
    return float((2 * n + 1) * total / 2)


def askey_coeff1_closed(alpha: float, n):
    """Circle coefficients of ``(1 - theta/alpha)_+^2``; ``n`` may be an array.

    Obtained by integrating by parts twice; for ``alpha > pi`` the
    support is cut at ``pi``.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    n = np.asarray(n)
    nf = np.where(n == 0, 1, n).astype(float)
    if alpha <= math.pi:
        x = nf * alpha
        out = 4.0 * (x - np.sin(x)) / (math.pi * alpha**2 * nf**3)
        zero = alpha / (3.0 * math.pi)
    else:
        r = 1.0 - math.pi / alpha
        sign = np.where(n % 2 == 0, 1.0, -1.0)
        out = 4.0 * (1.0 - r * sign) / (math.pi * alpha * nf**2)
        zero = alpha * (1.0 - r**3) / (3.0 * math.pi)
    out = np.where(n == 0, zero, out)
    return float(out) if out.ndim == 0 else out


# Dispatch -----------------------------------------------------------------

def closed_coeff2(kernel: Kernel, n: int) -> float:
    """Closed-form 2-Schoenberg coefficient, when the kernel has one."""
    if isinstance(kernel, Exponential):
        return exp_coeff2_closed(kernel.alpha, n)
    if isinstance(kernel, Askey) and kernel.tau == 2 and kernel.alpha <= math.pi:
        return askey_coeff2_closed(kernel.alpha, n)
    raise ValueError(f"no closed form for {kernel!r}")


def has_closed_form(kernel: Kernel, d: int) -> bool:
    return d == 2 and (
        isinstance(kernel, Exponential)
        or (isinstance(kernel, Askey) and kernel.tau == 2 and kernel.alpha <= math.pi)
    )


def circle_coefficients(kernel: Kernel, tol: float = 1e-13):
    """Provider ``m -> b_{m,1}``: closed form when known, else memoised quadrature."""
    if isinstance(kernel, Exponential):
        return lambda m: exp_coeff1_closed(kernel.alpha, m)
    if isinstance(kernel, Askey) and kernel.tau == 2:
        return lambda m: askey_coeff1_closed(kernel.alpha, m)

    @lru_cache(maxsize=None)
    def one(m: int) -> float:
        return coeff_fourier_1(kernel, m, tol)

    return lambda m: np.array([one(int(k)) for k in np.atleast_1d(m)])


def compute_sequence(kernel: Kernel, d: int, n_max: int, method="quadrature",
                     tol: float = 1e-12, workers: Optional[int] = None) -> SchoenbergSequence:
    """Coefficients ``b_{0..n_max, d}`` of ``kernel`` by the requested method.

    ``tol`` is the quadrature tolerance for ``"quadrature"`` and the
    series-truncation tolerance for ``"lift"``; circle coefficients used
    by the lift come from closed forms when available, otherwise from
    quadrature at ``tol / 10``.
    """
    method = Method(method)
    if method is Method.QUADRATURE:
        return quadrature_sequence(kernel, d, n_max, tol, workers)
    if method is Method.LIFT:
        return lift_sequence(circle_coefficients(kernel, tol / 10), d, n_max, tol, workers)
    if not has_closed_form(kernel, d):
        raise ValueError(f"no closed form for {kernel!r} on S^{d}")
    ns = range(n_max + 1)
    if workers and workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(lambda n: closed_coeff2(kernel, n), ns))
    else:
        values = [closed_coeff2(kernel, n) for n in ns]
    return SchoenbergSequence(d, values, Method.CLOSED, tol)
